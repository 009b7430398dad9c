#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "torsionlab/check.hpp"
#include "torsionlab/elliptic.hpp"
#include "torsionlab/geometry.hpp"

// Brownian motion here is the one generated by the Laplacian itself: each
// coordinate has variance 2s at time s, and the transition density is
// (4 pi s)^-1 exp(-|x-y|^2 / (4s)). Every sampler and series below uses it.

namespace torsionlab {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The key is the 64-bit seed. Counter words 2..3 hold the stream number
/// (one per Monte Carlo path), word 1 the substream, and word 0 counts the
/// blocks drawn, so any path can be replayed on its own in any thread.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream = 0);

  /// The raw 10-round bijection.
  static Counter block(Counter ctr, Key key);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on the open interval (0,1) with 53 random bits.
  double uniform();
  /// Standard normal by Box-Muller; the spare variate is kept.
  double normal();

 private:
  Counter ctr_;
  Key key_;
  Counter buf_{};
  int used_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct McConfig {
  std::int64_t n_paths = 100000;
  std::uint64_t seed = 1;
  double eps_shell = 1e-4;
  std::int64_t max_steps = 100000;

  /// n_paths >= 1000 and eps_shell in [1e-6, 1e-2]; throws InvalidArgument.
  void validate() const;
};

/// Mergeable (count, sum, sum of squares) summary.
struct McAccumulator {
  std::int64_t count = 0;
  double sum = 0.0;
  double sumsq = 0.0;

  void add(double x) {
    ++count;
    sum += x;
    sumsq += x * x;
  }
  void merge(const McAccumulator& o) {
    count += o.count;
    sum += o.sum;
    sumsq += o.sumsq;
  }
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_effective = 0;
  std::int64_t failures = 0;

  static McEstimate from(const McAccumulator& acc, std::int64_t failures = 0);
  /// |mean - value| <= k std_error
  bool agrees(double value, double k = 3.0) const;
};

/// Walk-on-spheres estimate of the torsion function (expected lifetime) at x.
/// Each jump adds d^2/4 and moves to a uniform point on the circle of radius
/// d; the walk stops inside the eps_shell. Paths that exceed max_steps are
/// failures; more than 0.1% of them throws SolverFailure.
/// Throws InvalidArgument when x is not at distance > eps_shell inside.
McEstimate wos_expected_exit_time(const SlitDomain& dom, Point x, const McConfig& cfg,
                                  std::uint32_t substream = 0);

/// First time the motion started at 0 reaches level a: a^2 / (2 Z^2).
double sample_hitting_time(double a, Philox4x32& rng);
/// P[tau > t] = erf(a / (2 sqrt t)).
double hitting_time_survival(double a, double t);
/// n samples from paths 0..n-1 of the given seed.
std::vector<double> sample_hitting_times(double a, std::int64_t n, std::uint64_t seed);

/// Kolmogorov-Smirnov distance between the samples and a continuous CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// P_{x1}[T_(0,b) > t] for the interval (0,b). Uses the sine series for
/// moderate and large t and the image series for small t; both are
/// truncated once the tail bound drops below 1e-12.
double survival_interval(double x1, double b, double t);
/// 2^{3/2} exp(-t pi^2 / (4 b^2)).
double survival_interval_bound(double b, double t);

/// Exit-top probability of the half-strip (0,b) x (-inf,a) from x:
/// integral of rho(a - x2, tau) survival_interval(x1, b, tau) d tau.
/// Throws SolverFailure if the quadrature error estimate exceeds 1e-10.
double halfstrip_exit_top_probability(Point x, double a, double b);
/// 2^{3/2} exp(-pi (a - x2) / (2b)).
double halfstrip_bound(Point x, double a, double b);
/// Conditional Monte Carlo for the same integral: exact hitting-time samples
/// fed into survival_interval.
McEstimate halfstrip_exit_top_mc(Point x, double a, double b, const McConfig& cfg);

/// Exit time of the unit disk from its center, P[T > s] = sum_k 2/(j_k J1(j_k)) e^{-j_k^2 s}.
class DiskExitTime {
 public:
  DiskExitTime();
  double survival(double s) const;
  /// Exact sample by inverting the survival function.
  double sample(Philox4x32& rng) const;

 private:
  std::vector<double> j2_;
  std::vector<double> coef_;
};

/// Monte Carlo estimate of P_x[T_R <= t < T_{Omega_ab}] for the lemma frame.
/// Balls stay inside R until the walk reaches the top side, and their exit
/// times are drawn from the disk law, so the time line is exact up to the
/// absorbing shells. `dom` must already contain the frame sides as slits.
McEstimate lemma3_joint_probability(const SlitDomain& dom, const LemmaThreeFrame& frame, Point x,
                                    double t, const McConfig& cfg, std::uint32_t substream = 0);
/// 2^{3/2} exp(-pi (a - x2) / (4b) - t lambda1 / 8).
double lemma3_joint_bound(const LemmaThreeFrame& frame, Point x, double t, double lambda1);

struct Lemma3Point {
  Point x;
  double v = 0.0;       ///< solver torsion of Omega_ab at x
  double first = 0.0;   ///< (x1 - p)(p + b - x1) / 2
  double second = 0.0;  ///< 2^{9/2} exp(-pi (a - x2) / (2b)) / lambda1
  double rhs = 0.0;
  double margin = 0.0;  ///< rhs - v
  bool pass = false;
};

struct Lemma3Report {
  double lambda1 = 0.0;
  double h = 0.0;
  std::vector<Lemma3Point> points;
  std::vector<Check> checks;  ///< one "e65-certificate" per point

  bool pass() const;
};

/// Throws InvalidArgument unless the frame's open rectangle lies inside the
/// ambient domain with no boundary feature crossing it.
void check_frame_inside(const SlitDomain& ambient, const LemmaThreeFrame& frame);

/// Solves torsion and lambda_1 on the ambient domain with K1..K3 added and
/// checks the localisation lemma's pointwise bound at each x. Points outside
/// the rectangle throw InvalidArgument.
Lemma3Report verify_lemma3(const LemmaThreeFrame& frame, const SlitDomain& ambient,
                           std::span<const Point> x_list, double h, const EigenOptions& eig = {});

}  // namespace torsionlab
