#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "torsionlab/check.hpp"

namespace torsionlab::cli {

inline constexpr std::string_view kToolVersion = "0.9.0";

enum class Kind { geom, solve, efficiency, sweep, mc, verify_all };

Kind kind_from_string(std::string_view s);  // throws InvalidArgument
std::string_view to_string(Kind k);

/// One experiment. `params` is the kind-specific record; numbers in it may
/// be JSON numbers or strings such as "2/3".
struct ExperimentConfig {
  Kind kind = Kind::geom;
  nlohmann::json params = nlohmann::json::object();
  std::filesystem::path output_dir = "torsionlab-out";
  std::uint64_t seed = 20261015;
  int threads = 0;  ///< 0 keeps the OpenMP default

  /// {"kind", "parameters", "output_dir", "seed", "threads"}; all but kind optional.
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  /// Parses every parameter without computing anything. Throws InvalidArgument
  /// on an unknown key, a missing required key or an out-of-range value.
  void validate() const;
};

struct Report {
  std::string tool_version{kToolVersion};
  nlohmann::json config;
  nlohmann::json results = nlohmann::json::object();
  std::vector<Check> checks;
  std::vector<std::string> artifacts;  ///< files written next to report.json
  std::string summary;                 ///< one line for the terminal
  double wall_time = 0.0;

  bool pass() const;
  nlohmann::json to_json() const;
};

/// Validates, runs the pipeline, writes report.json and the artifacts into
/// output_dir. Throws InvalidArgument (bad config) or SolverFailure.
Report run(const ExperimentConfig& config);

/// 0 all checks pass, 1 a check failed.
inline int exit_code(const Report& r) { return r.pass() ? 0 : 1; }
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitSolverFailure = 3;

}  // namespace torsionlab::cli
