#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "torsionlab/check.hpp"
#include "torsionlab/localisation.hpp"

namespace torsionlab::verify {

struct AcceptanceOptions {
  std::uint64_t seed = 20261015;
  std::int64_t paths = 100000;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  double seconds = 0.0;

  bool pass() const;
  /// Worst check, for the one-line summary.
  std::string summary() const;
};

/// Sweeps shared by the trend and bracket criteria, computed once per key.
class SweepCache {
 public:
  const std::vector<SweepRow>& get(double alpha, double c, int q);

 private:
  std::map<std::tuple<double, double, int>, std::vector<SweepRow>> rows_;
};

CriterionResult solver_correctness();                      // 1
CriterionResult closed_forms();                            // 2
CriterionResult efficiency_bracket();                      // 3
CriterionResult comb_bracket(SweepCache& cache);           // 4
CriterionResult localisation_trends(SweepCache& cache);    // 5
CriterionResult hardy_certificate(const AcceptanceOptions& opts);    // 6
CriterionResult stochastic_agreement(const AcceptanceOptions& opts); // 7
CriterionResult hitting_time_law(const AcceptanceOptions& opts);     // 8
CriterionResult halfstrip(const AcceptanceOptions& opts);            // 9
CriterionResult lemma_certificate(const AcceptanceOptions& opts);    // 10
CriterionResult mass_and_survival();                                 // 11

/// Runs criteria 1..11 in order; `done` sees each result as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& done = {});

}  // namespace torsionlab::verify
