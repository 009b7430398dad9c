#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "torsionlab/cli.hpp"
#include "torsionlab/errors.hpp"

using namespace torsionlab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {
cli::ExperimentConfig make(const std::string& kind, json params, const std::string& dir) {
  cli::ExperimentConfig c;
  c.kind = cli::kind_from_string(kind);
  c.params = std::move(params);
  c.output_dir = fs::temp_directory_path() / ("torsionlab_cli_" + dir);
  fs::remove_all(c.output_dir);
  return c;
}
json read(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}
}  // namespace

TEST(Cli, ConfigParsing) {
  const auto c = cli::ExperimentConfig::from_json(
      json::parse(R"({"kind": "sweep", "parameters": {"alpha": "2/3", "n": [8, 16]}, "seed": 3, "threads": 2})"));
  EXPECT_EQ(c.kind, cli::Kind::sweep);
  EXPECT_EQ(c.seed, 3u);
  EXPECT_EQ(c.threads, 2);
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(cli::ExperimentConfig::from_json(c.to_json()).to_json(), c.to_json());
  EXPECT_THROW(cli::ExperimentConfig::from_json(json::parse(R"({"kind": "dance"})")), InvalidArgument);
  EXPECT_THROW(cli::ExperimentConfig::from_json(json::parse(R"({"kind": "geom", "colour": 1})")), InvalidArgument);
  EXPECT_THROW(cli::ExperimentConfig::from_json(json::parse(R"({"kind": "geom", "seed": -1})")), InvalidArgument);
}

TEST(Cli, ValidationBeforeCompute) {
  EXPECT_THROW(make("solve", {{"domain", "square"}, {"h", "1/3.5"}}, "v1").validate(), InvalidArgument);
  EXPECT_THROW(make("solve", {{"wat", 1}}, "v2").validate(), InvalidArgument);
  EXPECT_THROW(make("sweep", {{"n", {8, 4}}}, "v3").validate(), InvalidArgument);
  EXPECT_THROW(make("sweep", {{"n", {8, 128}}}, "v4").validate(), InvalidArgument);
  EXPECT_NO_THROW(make("sweep", {{"n", {8, 128}}, {"allow_large", true}}, "v5").validate());
  EXPECT_THROW(make("mc", {{"mode", "teleport"}}, "v6").validate(), InvalidArgument);
  EXPECT_THROW(make("mc", {{"mode", "wos"}, {"points", {{3.0, 3.0}}}}, "v7").validate(), InvalidArgument);
  EXPECT_THROW(make("efficiency", {{"tol", "0.1"}}, "v8").validate(), InvalidArgument);
  // nothing was written
  EXPECT_FALSE(fs::exists(fs::temp_directory_path() / "torsionlab_cli_v1"));
}

TEST(Cli, GeomSquare) {
  const auto c = make("geom", {{"domain", "square"}, {"resolution", 64}}, "geom");
  const cli::Report r = cli::run(c);
  EXPECT_NEAR(r.results["inradius"].get<double>(), 0.5, 1e-12);
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(fs::exists(c.output_dir / "distance.csv"));
  const json j = read(c.output_dir / "report.json");
  EXPECT_EQ(j["tool_version"], std::string(cli::kToolVersion));
  EXPECT_EQ(j["config"]["kind"], "geom");
}

TEST(Cli, GeomCombChecks) {
  const cli::Report r = cli::run(make("geom", {{"domain", "comb:n=16,alpha=2/3,c=1"}}, "geomcomb"));
  std::vector<std::string> names;
  for (const auto& ch : r.checks) names.push_back(ch.name);
  EXPECT_EQ(names, (std::vector<std::string>{"e45-lower", "e45-upper", "e43-lower", "e44-upper"}));
  EXPECT_TRUE(r.pass());
}

TEST(Cli, SweepKappaTarget) {
  const auto c = make("sweep", {{"alpha", "2/3"}, {"c", 1}, {"n", {4, 8}}, {"q", 8}}, "sweep");
  const cli::Report r = cli::run(c);
  for (const auto& row : r.results["rows"]) EXPECT_DOUBLE_EQ(row["kappa_target"].get<double>(), 0.5);
  for (const char* f : {"sweep.csv", "cross_section_n4.csv", "cross_section_n8.csv", "ratio.svg"})
    EXPECT_TRUE(fs::exists(c.output_dir / f)) << f;
  bool saw = false;
  for (const auto& ch : r.checks) saw |= ch.name == "e40-upper";
  EXPECT_TRUE(saw);
}

// Property: the same config and seed give byte-identical JSON apart from wall_time.
TEST(Cli, Idempotent) {
  const json params = {{"mode", "wos"}, {"points", {{0.3, 0.4}}}, {"paths", 2000}, {"h", "1/32"}};
  auto c1 = make("mc", params, "idem1");
  auto c2 = make("mc", params, "idem1");
  c2.threads = 1;
  c1.threads = 2;
  auto strip = [](json j) {
    j.erase("wall_time");
    j["config"].erase("threads");
    return j.dump();
  };
  cli::run(c1);
  const std::string a = strip(read(c1.output_dir / "report.json"));
  cli::run(c2);
  EXPECT_EQ(a, strip(read(c2.output_dir / "report.json")));
}

TEST(Cli, EfficiencyCsvAndExitCode) {
  const fs::path csv = fs::temp_directory_path() / "torsionlab_cli_eff.csv";
  fs::remove(csv);
  auto c = make("efficiency", {{"domain", "rect:a=4,b=1"}, {"h", "1/32"}, {"csv", csv.string()}}, "eff");
  const cli::Report r = cli::run(c);
  EXPECT_EQ(cli::exit_code(r), 0);
  EXPECT_TRUE(fs::exists(csv));
  c.params["c_hardy"] = "1/100";
  EXPECT_EQ(cli::exit_code(cli::run(c)), 1);
}

TEST(Cli, SolverFailurePropagates) {
  auto c = make("mc", {{"mode", "wos"}, {"max_steps", 1}, {"paths", 1000}, {"compare", false}}, "fail");
  EXPECT_THROW(cli::run(c), SolverFailure);
}
