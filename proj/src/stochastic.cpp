#include "torsionlab/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/tools/roots.hpp>

#include "torsionlab/errors.hpp"
#include "torsionlab/grid.hpp"

namespace torsionlab {

using std::numbers::pi;

// ---------------------------------------------------------------------------
// Philox4x32-10

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, ctr[0], hi0, lo0);
    mulhilo(kM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

Philox4x32::Philox4x32(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream)
    : ctr_{0u, substream, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)},
      key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

Philox4x32::result_type Philox4x32::operator()() {
  if (used_ == 4) {
    buf_ = block(ctr_, key_);
    ++ctr_[0];
    used_ = 0;
  }
  return buf_[static_cast<std::size_t>(used_++)];
}

double Philox4x32::uniform() {
  const std::uint64_t hi = (*this)();
  const std::uint64_t lo = (*this)();
  const std::uint64_t bits = ((hi << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Philox4x32::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double th = 2.0 * pi * uniform();
  spare_ = r * std::sin(th);
  has_spare_ = true;
  return r * std::cos(th);
}

// ---------------------------------------------------------------------------
// Path driver

void McConfig::validate() const {
  if (n_paths < 1000) throw InvalidArgument("Monte Carlo needs at least 1000 paths");
  if (!(eps_shell >= 1e-6 && eps_shell <= 1e-2))
    throw InvalidArgument("eps_shell must lie in [1e-6, 1e-2]");
  if (max_steps < 1) throw InvalidArgument("max_steps must be positive");
}

McEstimate McEstimate::from(const McAccumulator& acc, std::int64_t failures) {
  McEstimate e;
  e.n_effective = acc.count;
  e.failures = failures;
  if (acc.count == 0) return e;
  const double n = static_cast<double>(acc.count);
  e.mean = acc.sum / n;
  if (acc.count > 1) {
    const double var = std::max(0.0, (acc.sumsq - n * e.mean * e.mean) / (n - 1.0));
    e.std_error = std::sqrt(var / n);
  }
  return e;
}

bool McEstimate::agrees(double value, double k) const { return std::abs(mean - value) <= k * std_error; }

namespace {

constexpr std::int64_t kPathBlock = 1024;

// Runs f(path, rng) for every path. Blocks are merged in index order, so the
// estimate is bit-identical for any thread count.
template <class F>
McEstimate run_paths(const McConfig& cfg, std::uint32_t substream, F&& f) {
  const std::int64_t nb = (cfg.n_paths + kPathBlock - 1) / kPathBlock;
  std::vector<McAccumulator> acc(static_cast<std::size_t>(nb));
  std::vector<std::int64_t> fails(static_cast<std::size_t>(nb), 0);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t blk = 0; blk < nb; ++blk) {
    const std::int64_t end = std::min(cfg.n_paths, (blk + 1) * kPathBlock);
    for (std::int64_t p = blk * kPathBlock; p < end; ++p) {
      Philox4x32 rng(cfg.seed, static_cast<std::uint64_t>(p), substream);
      const std::optional<double> x = f(rng);
      if (x)
        acc[static_cast<std::size_t>(blk)].add(*x);
      else
        ++fails[static_cast<std::size_t>(blk)];
    }
  }
  McAccumulator total;
  std::int64_t failures = 0;
  for (std::int64_t b = 0; b < nb; ++b) {
    total.merge(acc[static_cast<std::size_t>(b)]);
    failures += fails[static_cast<std::size_t>(b)];
  }
  if (static_cast<double>(failures) > 1e-3 * static_cast<double>(cfg.n_paths)) {
    std::ostringstream os;
    os << failures << " of " << cfg.n_paths << " paths exceeded " << cfg.max_steps << " steps";
    throw SolverFailure(os.str(), static_cast<int>(cfg.max_steps), static_cast<double>(failures));
  }
  return McEstimate::from(total, failures);
}

}  // namespace

McEstimate wos_expected_exit_time(const SlitDomain& dom, Point x, const McConfig& cfg,
                                  std::uint32_t substream) {
  cfg.validate();
  if (!(distance_to_boundary(dom, x) > cfg.eps_shell))
    throw InvalidArgument("walk-on-spheres start point must lie deeper than eps_shell");
  const double eps = cfg.eps_shell;
  return run_paths(cfg, substream, [&](Philox4x32& rng) -> std::optional<double> {
    Point y = x;
    double acc = 0.0;
    for (std::int64_t step = 0; step < cfg.max_steps; ++step) {
      const double d = dom.distance_to_features(y);
      if (d < eps) return acc;
      acc += 0.25 * d * d;
      const double th = 2.0 * pi * rng.uniform();
      y = {y.x + d * std::cos(th), y.y + d * std::sin(th)};
    }
    return std::nullopt;
  });
}

// ---------------------------------------------------------------------------
// One-dimensional laws

double sample_hitting_time(double a, Philox4x32& rng) {
  if (!(a > 0.0)) throw InvalidArgument("hitting level must be positive");
  double z = 0.0;
  while (z == 0.0) z = rng.normal();
  return a * a / (2.0 * z * z);
}

double hitting_time_survival(double a, double t) {
  if (t <= 0.0) return 1.0;
  return std::erf(a / (2.0 * std::sqrt(t)));
}

std::vector<double> sample_hitting_times(double a, std::int64_t n, std::uint64_t seed) {
  if (!(a > 0.0)) throw InvalidArgument("hitting level must be positive");
  std::vector<double> out(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < n; ++p) {
    Philox4x32 rng(seed, static_cast<std::uint64_t>(p));
    out[static_cast<std::size_t>(p)] = sample_hitting_time(a, rng);
  }
  return out;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InvalidArgument("no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

namespace {

// P[lo < N < hi] for a standard normal, accurate in both tails.
double normal_mass(double lo, double hi) {
  const double r = 1.0 / std::numbers::sqrt2;
  if (lo >= 0.0) return 0.5 * (std::erfc(lo * r) - std::erfc(hi * r));
  if (hi <= 0.0) return 0.5 * (std::erfc(-hi * r) - std::erfc(-lo * r));
  return 1.0 - 0.5 * (std::erfc(-lo * r) + std::erfc(hi * r));
}

// Reflection principle with spacing 2b; the position has variance 2t.
double survival_images(double x, double b, double t) {
  const double sigma = std::sqrt(2.0 * t);
  double total = 0.0;
  for (int n = 0;; ++n) {
    double term = 0.0;
    for (int s : {n, -n}) {
      const double shift = 2.0 * s * b;
      term += normal_mass((-x - shift) / sigma, (b - x - shift) / sigma) -
              normal_mass((x - shift) / sigma, (b + x - shift) / sigma);
      if (n == 0) break;
    }
    total += term;
    // the next pair of images starts at least 2nb from the interval
    if (n > 0 && 2.0 * n * b / sigma > 9.0) break;
  }
  return total;
}

double survival_sines(double x, double b, double t) {
  const double s = pi * pi * t / (b * b);
  double total = 0.0;
  for (int k = 1;; k += 2) {
    total += 4.0 / (k * pi) * std::sin(k * pi * x / b) * std::exp(-k * k * s);
    // remaining odd terms: first one bounds the rest geometrically
    const int kn = k + 2;
    const double first = 4.0 / (kn * pi) * std::exp(-static_cast<double>(kn) * kn * s);
    const double ratio = std::exp(-4.0 * (kn + 1) * s);
    if (first / (1.0 - ratio) < 1e-12) break;
  }
  return total;
}

}  // namespace

double survival_interval(double x1, double b, double t) {
  if (!(b > 0.0)) throw InvalidArgument("interval length must be positive");
  if (!(x1 > 0.0 && x1 < b)) throw InvalidArgument("start point must lie inside (0,b)");
  if (!(t >= 0.0)) throw InvalidArgument("time must be non-negative");
  if (t == 0.0) return 1.0;
  const double s = pi * pi * t / (b * b);
  const double p = s < 1.0 ? survival_images(x1, b, t) : survival_sines(x1, b, t);
  return std::clamp(p, 0.0, 1.0);
}

double survival_interval_bound(double b, double t) {
  return 2.0 * std::numbers::sqrt2 * std::exp(-t * pi * pi / (4.0 * b * b));
}

// ---------------------------------------------------------------------------
// Half-strip

double halfstrip_exit_top_probability(Point x, double a, double b) {
  if (!(b > 0.0) || !(x.x > 0.0 && x.x < b)) throw InvalidArgument("need 0 < x1 < b");
  if (!(x.y < a)) throw InvalidArgument("need x2 < a");
  const double gap = a - x.y;
  // tau = gap^2 / (4 s^2) turns rho(gap, tau) d tau into (2/sqrt pi) e^{-s^2} ds
  auto f = [&](double s) {
    if (!(s > 0.0)) return 0.0;
    const double tau = gap * gap / (4.0 * s * s);
    if (!std::isfinite(tau)) return 0.0;
    return 2.0 / std::sqrt(pi) * std::exp(-s * s) * survival_interval(x.x, b, tau);
  };
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, std::numeric_limits<double>::infinity(), 20, 1e-12, &err);
  if (!(err <= 1e-10)) {
    std::ostringstream os;
    os << "half-strip quadrature error estimate " << err << " exceeds 1e-10";
    throw SolverFailure(os.str(), 20, err);
  }
  return value;
}

double halfstrip_bound(Point x, double a, double b) {
  return 2.0 * std::numbers::sqrt2 * std::exp(-pi * (a - x.y) / (2.0 * b));
}

McEstimate halfstrip_exit_top_mc(Point x, double a, double b, const McConfig& cfg) {
  cfg.validate();
  if (!(b > 0.0) || !(x.x > 0.0 && x.x < b)) throw InvalidArgument("need 0 < x1 < b");
  if (!(x.y < a)) throw InvalidArgument("need x2 < a");
  const double gap = a - x.y;
  return run_paths(cfg, 0, [&](Philox4x32& rng) -> std::optional<double> {
    return survival_interval(x.x, b, sample_hitting_time(gap, rng));
  });
}

// ---------------------------------------------------------------------------
// Disk exit time and the space-time walk

namespace {
constexpr int kDiskZeros = 100;
constexpr double kDiskCut = 50.0;  // terms with j^2 s > kDiskCut are below e^-50
}  // namespace

DiskExitTime::DiskExitTime() {
  for (int k = 1; k <= kDiskZeros; ++k) {
    const double j = boost::math::cyl_bessel_j_zero(0.0, k);
    j2_.push_back(j * j);
    coef_.push_back(2.0 / (j * boost::math::cyl_bessel_j(1, j)));
  }
}

double DiskExitTime::survival(double s) const {
  if (s * j2_.back() < kDiskCut) return 1.0;  // exit before s is astronomically rare
  double total = 0.0;
  for (std::size_t k = 0; k < j2_.size() && j2_[k] * s < kDiskCut; ++k)
    total += coef_[k] * std::exp(-j2_[k] * s);
  return std::clamp(total, 0.0, 1.0);
}

double DiskExitTime::sample(Philox4x32& rng) const {
  const double u = rng.uniform();
  double lo = kDiskCut / j2_.back();
  double hi = 1.0;
  while (survival(hi) > u) {
    lo = hi;
    hi *= 2.0;
  }
  if (survival(lo) <= u) return lo;
  auto g = [&](double s) { return survival(s) - u; };
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(g, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (r.first + r.second);
}

McEstimate lemma3_joint_probability(const SlitDomain& dom, const LemmaThreeFrame& frame, Point x,
                                    double t, const McConfig& cfg, std::uint32_t substream) {
  cfg.validate();
  frame.validate();
  if (!frame.contains(x)) throw InvalidArgument("start point must lie inside the lemma rectangle");
  if (!(t >= 0.0)) throw InvalidArgument("time must be non-negative");
  static const DiskExitTime law;
  const double eps = cfg.eps_shell;
  return run_paths(cfg, substream, [&](Philox4x32& rng) -> std::optional<double> {
    Point y = x;
    double clock = 0.0;
    bool left_rectangle = false;
    for (std::int64_t step = 0; step < cfg.max_steps; ++step) {
      const double d = dom.distance_to_features(y);
      if (d < eps) return 0.0;  // absorbed before t
      double r = d;
      if (!left_rectangle) {
        const double top = frame.a - y.y;
        if (top < eps) {
          left_rectangle = true;
        } else {
          r = std::min(r, top);
        }
      }
      const double dt = r * r * law.sample(rng);
      if (clock + dt > t) return left_rectangle ? 1.0 : 0.0;
      clock += dt;
      const double th = 2.0 * pi * rng.uniform();
      y = {y.x + r * std::cos(th), y.y + r * std::sin(th)};
    }
    return std::nullopt;
  });
}

double lemma3_joint_bound(const LemmaThreeFrame& frame, Point x, double t, double lambda1) {
  return 2.0 * std::numbers::sqrt2 * std::exp(-pi * (frame.a - x.y) / (4.0 * frame.b) - t * lambda1 / 8.0);
}

// ---------------------------------------------------------------------------
// Lemma certificate

bool Lemma3Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

// Does the segment meet the open box (x0,x1) x (y0,y1)? Liang-Barsky clip.
bool meets_open_box(const Segment& s, double x0, double x1, double y0, double y1) {
  const double tol = 1e-12 * std::max(x1 - x0, y1 - y0);
  x0 += tol;
  x1 -= tol;
  y0 += tol;
  y1 -= tol;
  double t0 = 0.0, t1 = 1.0;
  const double dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {s.a.x - x0, x1 - s.a.x, s.a.y - y0, y1 - s.a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] <= 0.0) return false;
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0.0)
      t0 = std::max(t0, r);
    else
      t1 = std::min(t1, r);
    if (t0 >= t1) return false;
  }
  return true;
}

}  // namespace

void check_frame_inside(const SlitDomain& ambient, const LemmaThreeFrame& frame) {
  frame.validate();
  const double x0 = frame.p, x1 = frame.p + frame.b, y0 = 0.0, y1 = frame.a;
  if (!ambient.inside_outer({0.5 * (x0 + x1), 0.5 * (y0 + y1)}))
    throw InvalidArgument("lemma rectangle lies outside the ambient domain");
  for (const Segment& s : ambient.boundary())
    if (meets_open_box(s, x0, x1, y0, y1))
      throw InvalidArgument("ambient boundary cuts through the lemma rectangle");
}

Lemma3Report verify_lemma3(const LemmaThreeFrame& frame, const SlitDomain& ambient,
                           std::span<const Point> x_list, double h, const EigenOptions& eig) {
  check_frame_inside(ambient, frame);
  for (const Point& x : x_list)
    if (!frame.contains(x)) throw InvalidArgument("lemma sample point outside the rectangle");

  const SlitDomain dom = lemma_three_domain(ambient, frame);
  const GridDomain grid = rasterize(dom, h);
  const TorsionSolution v = solve_torsion(grid);
  const EigenResult e = principal_eigenvalue(grid, eig);

  Lemma3Report rep;
  rep.lambda1 = e.lambda1;
  rep.h = h;
  const double c = 16.0 * std::numbers::sqrt2;  // 2^{9/2}
  for (const Point& x : x_list) {
    Lemma3Point pt;
    pt.x = x;
    pt.v = interpolate(v.field, x);
    pt.first = 0.5 * (x.x - frame.p) * (frame.p + frame.b - x.x);
    pt.second = c * std::exp(-pi * (frame.a - x.y) / (2.0 * frame.b)) / e.lambda1;
    pt.rhs = pt.first + pt.second;
    pt.margin = pt.rhs - pt.v;
    pt.pass = pt.v <= pt.rhs;
    rep.checks.push_back(check_le("e65-certificate", pt.v, pt.rhs));
    rep.points.push_back(pt);
  }
  return rep;
}

}  // namespace torsionlab
