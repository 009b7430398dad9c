#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "torsionlab/geometry.hpp"

namespace torsionlab::io {

/// Domain file format: {"outer": [[x,y],...], "slits": [[[x,y],[x,y]],...], "label": "..."}.
/// Throws InvalidArgument on malformed input.
SlitDomain domain_from_json(const nlohmann::json& j);
nlohmann::json domain_to_json(const SlitDomain& dom);
SlitDomain read_domain(const std::filesystem::path& path);

/// A domain plus the comb parameters when it was built from them.
struct DomainSpec {
  SlitDomain domain;
  std::optional<CombParams> comb;  ///< set for comb:n=..,alpha=..,c=..
  int comb_n = 0;                  ///< number of teeth for any comb spec
  double comb_eps = 0.0;
};

/// Accepts a path to a domain file, or one of
///   square | rect:a=8,b=1 | polygon:sides=256,r=1
///   comb:n=16,alpha=2/3,c=1 | comb:n=16,eps=1/16
/// Numbers may be written as fractions p/q.
DomainSpec parse_domain(std::string_view spec);
/// Same, from a JSON value: a spec string or an inline domain object.
DomainSpec parse_domain(const nlohmann::json& j);
inline DomainSpec parse_domain(const char* spec) { return parse_domain(std::string_view(spec)); }
inline DomainSpec parse_domain(const std::string& spec) { return parse_domain(std::string_view(spec)); }

/// Real number, also accepting p/q. Throws InvalidArgument.
double parse_real(std::string_view text);
/// Real from a JSON number or string.
double real_from_json(const nlohmann::json& j);

/// Write to a sibling temporary file, then rename over the target.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Shortest text that reads back to the same double.
std::string fmt(double x);

/// Comma-separated table built in memory and written atomically.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  Csv& row(const std::vector<std::string>& cells);
  std::string str() const;
  void write(const std::filesystem::path& path) const { write_atomic(path, str()); }

 private:
  std::string text_;
  std::size_t width_;
};

/// Append one row to a CSV file, writing the header first if the file is new.
void append_csv_row(const std::filesystem::path& path, const std::vector<std::string>& header,
                    const std::vector<std::string>& cells);

struct SvgSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Axes, tick labels and one polyline per series. No styling beyond colour.
std::string svg_plot(const std::vector<SvgSeries>& series, std::string_view title,
                     std::string_view xlabel, std::string_view ylabel);

/// Outline of the domain: outer polygon and slits.
std::string svg_domain(const SlitDomain& dom);

}  // namespace torsionlab::io
