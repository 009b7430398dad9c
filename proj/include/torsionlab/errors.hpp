#pragma once

#include <stdexcept>
#include <string>

namespace torsionlab {

/// Rejected input: malformed geometry, misaligned grid, out-of-range parameter.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative method hit its cap before reaching the requested tolerance.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

}  // namespace torsionlab
