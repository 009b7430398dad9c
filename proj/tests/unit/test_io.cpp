#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "torsionlab/errors.hpp"
#include "torsionlab/io.hpp"

using namespace torsionlab;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("torsionlab_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}
std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}
}  // namespace

TEST(Io, ParseReal) {
  EXPECT_DOUBLE_EQ(io::parse_real("2/3"), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(io::parse_real(" 0.25 "), 0.25);
  EXPECT_DOUBLE_EQ(io::parse_real("1e-3"), 1e-3);
  EXPECT_THROW(io::parse_real("abc"), InvalidArgument);
  EXPECT_THROW(io::parse_real("1/0"), InvalidArgument);
  EXPECT_THROW(io::parse_real(""), InvalidArgument);
  EXPECT_DOUBLE_EQ(io::real_from_json(nlohmann::json("1/4")), 0.25);
  EXPECT_THROW(io::real_from_json(nlohmann::json::array()), InvalidArgument);
}

TEST(Io, ParseDomainSpecs) {
  EXPECT_DOUBLE_EQ(io::parse_domain("square").domain.area(), 1.0);
  EXPECT_DOUBLE_EQ(io::parse_domain("rect:a=4,b=1/2").domain.area(), 2.0);
  EXPECT_EQ(io::parse_domain("polygon:sides=6,r=1").domain.outer().size(), 6u);
  const auto c = io::parse_domain("comb:n=16,alpha=2/3,c=1");
  ASSERT_TRUE(c.comb.has_value());
  EXPECT_EQ(c.comb_n, 16);
  EXPECT_NEAR(c.comb_eps, std::pow(16.0, -2.0 / 3.0), 1e-15);
  const auto e = io::parse_domain("comb:n=8,eps=1/4");
  EXPECT_FALSE(e.comb.has_value());
  EXPECT_DOUBLE_EQ(e.comb_eps, 0.25);
  EXPECT_THROW(io::parse_domain("comb:alpha=1/2"), InvalidArgument);
  EXPECT_THROW(io::parse_domain("rect:a=1"), InvalidArgument);
  EXPECT_THROW(io::parse_domain("nonsense"), InvalidArgument);
}

// Property: domain JSON round trip is idempotent.
TEST(Io, DomainJsonRoundTrip) {
  for (const char* spec : {"square", "rect:a=3,b=1", "polygon:sides=7,r=2", "comb:n=8,eps=1/4"}) {
    const SlitDomain d = io::parse_domain(spec).domain;
    const auto j = io::domain_to_json(d);
    const SlitDomain back = io::domain_from_json(j);
    EXPECT_EQ(io::domain_to_json(back), j) << spec;
    EXPECT_DOUBLE_EQ(back.area(), d.area());
    EXPECT_EQ(back.label(), d.label());
  }
  EXPECT_THROW(io::domain_from_json(nlohmann::json::parse(R"({"slits": []})")), InvalidArgument);
  EXPECT_THROW(io::domain_from_json(nlohmann::json::parse(R"({"outer": [[0,0],[1,0]]})")), InvalidArgument);
}

TEST(Io, DomainFile) {
  const fs::path dir = scratch("domain");
  const fs::path f = dir / "d.json";
  io::write_atomic(f, R"({"outer": [[0,0],[2,0],[2,1],[0,1]], "slits": [[[1,0],[1,0.5]]], "label": "notched"})");
  const auto d = io::parse_domain(f.string());
  EXPECT_EQ(d.domain.label(), "notched");
  EXPECT_EQ(d.domain.slits().size(), 1u);
  EXPECT_EQ(io::read_domain(f).area(), 2.0);
}

TEST(Io, AtomicWriteLeavesNoTemporaries) {
  const fs::path dir = scratch("atomic");
  io::write_atomic(dir / "a.txt", "one");
  io::write_atomic(dir / "a.txt", "two");
  EXPECT_EQ(slurp(dir / "a.txt"), "two");
  int files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
  EXPECT_EQ(files, 1);
}

TEST(Io, CsvAndAppend) {
  io::Csv c({"a", "b"});
  c.row({"1", "2"}).row({"3", "4"});
  EXPECT_EQ(c.str(), "a,b\n1,2\n3,4\n");
  EXPECT_THROW(c.row({"1"}), std::logic_error);
  const fs::path f = scratch("csv") / "t.csv";
  io::append_csv_row(f, {"x", "y"}, {"1", "2"});
  io::append_csv_row(f, {"x", "y"}, {"3", "4"});
  EXPECT_EQ(slurp(f), "x,y\n1,2\n3,4\n");
}

TEST(Io, FormatRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 12345.678}) EXPECT_EQ(std::stod(io::fmt(x)), x);
}

TEST(Io, Svg) {
  const std::string s = io::svg_plot({{"r", {1, 2, 3}, {0.1, 0.4, 0.2}}}, "title", "n", "ratio");
  EXPECT_NE(s.find("<svg"), std::string::npos);
  EXPECT_NE(s.find("polyline"), std::string::npos);
  EXPECT_NE(io::svg_domain(io::parse_domain("comb:n=4,eps=1/2").domain).find("<line"), std::string::npos);
}
