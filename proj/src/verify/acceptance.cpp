#include "torsionlab/verify/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "torsionlab/constants.hpp"
#include "torsionlab/elliptic.hpp"
#include "torsionlab/functionals.hpp"
#include "torsionlab/geometry.hpp"
#include "torsionlab/grid.hpp"
#include "torsionlab/kernels.hpp"
#include "torsionlab/stochastic.hpp"
#include "torsionlab/verify/oracles.hpp"

namespace torsionlab::verify {

using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string str(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string n_tag(int n) { return "n=" + std::to_string(n); }

SlitDomain comb(double alpha, double c, int n) { return make_comb(CombParams{alpha, c, n}); }

// Random interior points at least `margin` inside.
std::vector<Point> interior_points(const SlitDomain& dom, int count, double margin, std::uint64_t seed) {
  Philox4x32 rng(seed, 0, 0xC0FFEEu);
  const BoundingBox b = dom.bbox();
  std::vector<Point> pts;
  while (static_cast<int>(pts.size()) < count) {
    const Point x{b.lo.x + b.width() * rng.uniform(), b.lo.y + b.height() * rng.uniform()};
    if (distance_to_boundary(dom, x) >= margin) pts.push_back(x);
  }
  return pts;
}

}  // namespace

bool CriterionResult::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string CriterionResult::summary() const {
  std::size_t failed = 0;
  const Check* first_fail = nullptr;
  for (const Check& c : checks)
    if (!c.pass) {
      ++failed;
      if (!first_fail) first_fail = &c;
    }
  std::ostringstream os;
  os << checks.size() << " checks";
  if (first_fail) {
    os << ", " << failed << " failed; first: " << first_fail->name;
    if (!first_fail->where.empty()) os << " [" << first_fail->where << ']';
    os << ' ' << first_fail->lhs << ' ' << first_fail->relation << ' ' << first_fail->rhs;
  }
  return os.str();
}

const std::vector<SweepRow>& SweepCache::get(double alpha, double c, int q) {
  const auto key = std::make_tuple(alpha, c, q);
  auto it = rows_.find(key);
  if (it == rows_.end()) {
    SweepConfig cfg;
    cfg.alpha = alpha;
    cfg.c = c;
    cfg.q = q;
    it = rows_.emplace(key, comb_sweep(cfg)).first;
  }
  return it->second;
}

// ---------------------------------------------------------------------------

CriterionResult solver_correctness() {
  CriterionResult r{1, "solver correctness against the square series", {}, {}, 0.0};
  const auto t0 = Clock::now();
  const SlitDomain sq = make_unit_square();
  double err[2] = {0.0, 0.0};
  double solve_seconds = 0.0;
  const int ms[2] = {64, 128};
  for (int k = 0; k < 2; ++k) {
    const int m = ms[k];
    const auto ts = Clock::now();
    const GridDomain g = rasterize(sq, 1.0 / m);
    const TorsionSolution s = solve_torsion(g);
    solve_seconds += since(ts);
    const auto exact = square_torsion_on_lattice(m);
    const auto ids = g.interior_nodes();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const int ii = ids[i] % g.nx(), jj = ids[i] / g.nx();
      const double ref = exact[static_cast<std::size_t>((jj - 1) * (m - 1) + (ii - 1))];
      err[k] = std::max(err[k], std::abs(s.field[i] - ref));
    }
    r.notes.push_back("h=1/" + std::to_string(m) + ": max error " + str(err[k]) + ", " +
                      std::to_string(s.stats.iterations) + " CG iterations");
  }
  const double ratio = err[0] / err[1];
  r.checks.push_back(check_le("solver-max-error", err[1], 5e-5, "h=1/128"));
  r.checks.push_back(check_ge("solver-order", ratio, 3.2, "err(1/64)/err(1/128)"));
  r.checks.push_back(check_le("solver-order", ratio, 4.8, "err(1/64)/err(1/128)"));
  r.checks.push_back(check_lt("solver-runtime", solve_seconds, 10.0, "seconds"));
  // the two oracles are independent series; they must agree with each other
  const double c1 = square_torsion_single_series(0.5, 0.5);
  const double c2 = square_torsion_double_series(0.5, 0.5, 2000);
  r.checks.push_back(check_le("oracle-consistency", std::abs(c1 - c2), 1e-8, "center"));
  r.notes.push_back("oracle center value " + str(c1));
  r.seconds = since(t0);
  return r;
}

CriterionResult closed_forms() {
  CriterionResult r{2, "closed forms: ball torsion, square and ball eigenvalues", {}, {}, 0.0};
  const auto t0 = Clock::now();
  const double j0 = bessel_j0_first_zero();
  r.checks.push_back(check_le("j0-constant", std::abs(j0 - constants::kBesselJ0), 1e-12));
  r.checks.push_back(check_le("j0-constant", std::abs(j0 * j0 - constants::kBesselJ0Squared), 1e-11, "squared"));

  const SlitDomain disk = make_regular_polygon(256, 1.0);
  const GridDomain gd = rasterize(disk, 1.0 / 128);
  const TorsionSolution vd = solve_torsion(gd);
  const double center = interpolate(vd.field, {0.0, 0.0});
  r.checks.push_back(check_le("ball-torsion-center", std::abs(center - 0.25) / 0.25, 0.01, "relative"));
  r.notes.push_back("256-gon center torsion " + str(center));

  const GridDomain gs = rasterize(make_unit_square(), 1.0 / 128);
  const EigenResult es = principal_eigenvalue(gs);
  const double two_pi2 = 2.0 * pi * pi;
  r.checks.push_back(check_le("square-lambda1", std::abs(es.lambda1 - two_pi2) / two_pi2, 0.005, "relative"));
  r.checks.push_back(check_le("square-lambda1-discrete",
                              std::abs(es.lambda1 - square_discrete_lambda1(1.0 / 128)) / es.lambda1, 1e-7,
                              "relative"));
  r.notes.push_back("square lambda1 " + str(es.lambda1) + " (continuum " + str(two_pi2) + ")");

  const EigenResult ed = principal_eigenvalue(gd);
  r.checks.push_back(check_le("ball-lambda1", std::abs(ed.lambda1 - j0 * j0) / (j0 * j0), 0.01, "relative"));
  r.notes.push_back("256-gon lambda1 " + str(ed.lambda1) + " (j0^2 " + str(j0 * j0) + ")");
  r.seconds = since(t0);
  return r;
}

CriterionResult efficiency_bracket() {
  CriterionResult r{3, "efficiency bracket with the Hardy constant 16", {}, {}, 0.0};
  const auto t0 = Clock::now();
  struct Case {
    SlitDomain dom;
    double h;
  };
  std::vector<Case> cases;
  cases.push_back({make_unit_square(), 1.0 / 128});
  cases.push_back({make_rectangle(4.0, 1.0), 1.0 / 64});
  cases.push_back({make_rectangle(16.0, 1.0), 1.0 / 64});
  for (int n : {8, 16, 32}) cases.push_back({comb(2.0 / 3.0, 1.0, n), comb_spacing(n, 16)});
  for (const Case& c : cases) {
    const EfficiencyReport e = check_theorem1_bracket(c.dom, constants::kHardySimplyConnected, c.h);
    const std::string& w = c.dom.label();
    r.checks.push_back(check_ge("e12-lower", e.phi, e.lower, w));
    r.checks.push_back(check_le("e12-upper", e.phi, e.upper, w));
    r.checks.push_back(check_le("efficiency-range", e.phi, 1.0, w + " phi"));
    r.checks.push_back(check_gt("efficiency-range", e.phi, 0.0, w + " phi"));
    r.checks.push_back(check_le("efficiency-range", e.dee, 1.0, w + " D"));
    r.checks.push_back(check_gt("efficiency-range", e.dee, 0.0, w + " D"));
    r.notes.push_back(w + ": phi=" + str(e.phi) + " D=" + str(e.dee));
  }
  r.seconds = since(t0);
  return r;
}

CriterionResult comb_bracket(SweepCache& cache) {
  CriterionResult r{4, "comb efficiency bracket for alpha in {1/3, 2/3, 5/6}", {}, {}, 0.0};
  const auto t0 = Clock::now();
  const std::pair<double, const char*> alphas[] = {{1.0 / 3.0, "1/3"}, {2.0 / 3.0, "2/3"}, {5.0 / 6.0, "5/6"}};
  for (const auto& [alpha, name] : alphas)
    for (const SweepRow& row : cache.get(alpha, 1.0, 16)) {
      const std::string w = std::string("alpha=") + name + " " + n_tag(row.n);
      r.checks.push_back(check_ge("e40-lower", row.phi, row.lower_e40, w));
      r.checks.push_back(check_le("e40-upper", row.phi, row.upper_e40, w));
      if (row.pre_asymptotic) r.notes.push_back(w + " is below N_{alpha,c}");
    }
  r.seconds = since(t0);
  return r;
}

CriterionResult localisation_trends(SweepCache& cache) {
  CriterionResult r{5, "localisation ratio trends along A_n", {}, {}, 0.0};
  const auto t0 = Clock::now();
  auto note_rows = [&](const char* name, const std::vector<SweepRow>& rows) {
    std::string s = name;
    for (const SweepRow& row : rows) s += " " + n_tag(row.n) + ":" + str(row.ratio);
    r.notes.push_back(s);
  };

  const auto& up = cache.get(1.0 / 3.0, 1.0, 16);
  note_rows("alpha=1/3", up);
  for (std::size_t k = 1; k < up.size(); ++k)
    r.checks.push_back(check_gt("thm2-ii-increasing", up[k].ratio, up[k - 1].ratio,
                                "alpha=1/3 " + n_tag(up[k].n) + " vs " + n_tag(up[k - 1].n)));

  const auto& down = cache.get(5.0 / 6.0, 1.0, 16);
  note_rows("alpha=5/6", down);
  for (std::size_t k = 1; k < down.size(); ++k)
    r.checks.push_back(check_lt("thm2-iii-decreasing", down[k].ratio, down[k - 1].ratio,
                                "alpha=5/6 " + n_tag(down[k].n) + " vs " + n_tag(down[k - 1].n)));
  for (const SweepRow& row : down)
    r.checks.push_back(check_le("thm1iii-bound", row.ratio, row.ratio_bound, "alpha=5/6 " + n_tag(row.n)));

  const auto& mid = cache.get(2.0 / 3.0, 1.0, 16);
  note_rows("alpha=2/3 c=1", mid);
  const double k1 = kappa_target(1.0);
  for (std::size_t k = 1; k < mid.size(); ++k)
    r.checks.push_back(check_le("e41-approach", std::abs(mid[k].ratio - k1), std::abs(mid[k - 1].ratio - k1),
                                "c=1 " + n_tag(mid[k].n) + " vs " + n_tag(mid[k - 1].n)));
  r.checks.push_back(check_le("e41-kappa", std::abs(mid.back().ratio - k1), 0.1, "c=1 " + n_tag(mid.back().n)));

  const auto& two = cache.get(2.0 / 3.0, 2.0, 16);
  note_rows("alpha=2/3 c=2", two);
  const double k2 = kappa_target(2.0);
  r.checks.push_back(check_le("e41-kappa", std::abs(two.back().ratio - k2), 0.1, "c=2 " + n_tag(two.back().n)));
  r.seconds = since(t0);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<double>> hardy_corpus(const GridDomain& g, std::uint64_t seed) {
  const std::size_t n = static_cast<std::size_t>(g.num_interior());
  const auto ids = g.interior_nodes();
  std::vector<std::vector<double>> out;
  auto sample = [&](auto&& f) {
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = f(g.node(ids[k]));
    return w;
  };
  const BoundingBox box{g.origin(), {g.origin().x + (g.nx() - 1) * g.h(), g.origin().y + (g.ny() - 1) * g.h()}};
  auto unit = [&](Point p) {
    return Point{(p.x - box.lo.x) / box.width(), (p.y - box.lo.y) / box.height()};
  };

  out.push_back(sample([&](Point p) {
    const Point u = unit(p);
    return (1.0 - std::abs(2.0 * u.x - 1.0)) * (1.0 - std::abs(2.0 * u.y - 1.0));
  }));

  // torsion iterates A^-k 1
  std::vector<double> w(n, 1.0);
  for (int k = 0; k < 10; ++k) {
    std::vector<double> next(n, 0.0);
    solve_linear(g, w, next);
    const double s = kernels::omp::max_abs(next);
    for (double& e : next) e /= s;
    out.push_back(next);
    w = std::move(next);
  }

  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k)
      out.push_back(sample([&](Point p) {
        const Point u = unit(p);
        return std::sin(j * pi * u.x) * std::sin(k * pi * u.y);
      }));

  Philox4x32 rng(seed, 1);
  while (out.size() < 40) {
    const Point c{box.lo.x + box.width() * rng.uniform(), box.lo.y + box.height() * rng.uniform()};
    const double rad = (0.05 + 0.45 * rng.uniform()) * std::max(box.width(), box.height());
    const int power = 1 + static_cast<int>(out.size() % 2);
    auto b = sample([&](Point p) {
      const double q = 1.0 - (norm(p - c) * norm(p - c)) / (rad * rad);
      return q > 0.0 ? std::pow(q, power) : 0.0;
    });
    if (kernels::omp::max_abs(b) > 0.0) out.push_back(std::move(b));
  }

  // random fields with 0..5 passes of neighbour averaging
  const auto nb = g.neighbours();
  for (int f = 0; out.size() < 100; ++f) {
    std::vector<double> r(n);
    for (double& e : r) e = rng.uniform() - (f % 3 == 0 ? 0.5 : 0.0);
    for (int pass = 0; pass < f % 6; ++pass) {
      std::vector<double> s(n);
      for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (std::int32_t m : nb[k]) acc += m >= 0 ? r[static_cast<std::size_t>(m)] : 0.0;
        s[k] = 0.5 * r[k] + 0.125 * acc;
      }
      r = std::move(s);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

CriterionResult hardy_certificate(const AcceptanceOptions& opts) {
  CriterionResult r{6, "Hardy quotient corpus and the L1 comparison with d^2", {}, {}, 0.0};
  const auto t0 = Clock::now();
  struct Case {
    SlitDomain dom;
    double h;
    bool corpus;
  };
  std::vector<Case> cases;
  cases.push_back({make_unit_square(), 1.0 / 64, true});
  cases.push_back({comb(2.0 / 3.0, 1.0, 8), comb_spacing(8, 16), true});
  cases.push_back({comb(2.0 / 3.0, 1.0, 16), comb_spacing(16, 16), true});
  cases.push_back({make_rectangle(4.0, 1.0), 1.0 / 64, false});
  cases.push_back({make_rectangle(16.0, 1.0), 1.0 / 64, false});
  cases.push_back({make_regular_polygon(256, 1.0), 1.0 / 128, false});
  cases.push_back({comb(2.0 / 3.0, 1.0, 32), comb_spacing(32, 16), false});

  for (const Case& c : cases) {
    const GridDomain g = rasterize(c.dom, c.h);
    const std::string& w = c.dom.label();
    if (c.corpus) {
      const auto corpus = hardy_corpus(g, opts.seed);
      double worst = INFINITY;
      for (const auto& f : corpus) worst = std::min(worst, hardy_quotient(g, ScalarField(g, f)));
      r.checks.push_back(check_gt("e9-hardy", worst, 1.0 / 16.0, w + " min over " + std::to_string(corpus.size())));
    }
    const TorsionSolution v = solve_torsion(g);
    const DistanceMoments dm = distance_moments(c.dom, g);
    for (Check& ch : torsion_certificates(v.field, dm))
      if (ch.name == "e11-upper" || ch.name == "e24-lower") {
        ch.where = w;
        r.checks.push_back(std::move(ch));
      }
  }
  r.seconds = since(t0);
  return r;
}

CriterionResult stochastic_agreement(const AcceptanceOptions& opts) {
  CriterionResult r{7, "walk-on-spheres against the elliptic solver", {}, {}, 0.0};
  const auto t0 = Clock::now();
  McConfig mc;
  mc.n_paths = opts.paths;
  mc.seed = opts.seed;
  mc.eps_shell = 1e-5;
  struct Case {
    SlitDomain dom;
    double h;
  };
  std::vector<Case> cases;
  cases.push_back({make_unit_square(), 1.0 / 128});
  cases.push_back({make_regular_polygon(256, 1.0), 1.0 / 128});
  cases.push_back({comb(2.0 / 3.0, 1.0, 8), comb_spacing(8, 128)});
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const Case& c = cases[ci];
    const GridDomain g = rasterize(c.dom, c.h);
    const TorsionSolution v = solve_torsion(g);
    const auto pts = interior_points(c.dom, 20, 0.02, opts.seed + ci);
    int agree = 0;
    double worst = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const McEstimate e = wos_expected_exit_time(c.dom, pts[k], mc, static_cast<std::uint32_t>(k));
      const double z = std::abs(e.mean - interpolate(v.field, pts[k])) / e.std_error;
      worst = std::max(worst, z);
      if (z <= 3.0) ++agree;
    }
    r.checks.push_back(check_ge("wos-agreement", agree, 19, c.dom.label() + " points within 3 SE of 20"));
    r.notes.push_back(c.dom.label() + ": largest |z| = " + str(worst));
  }
  const SlitDomain sq = make_unit_square();
  const McEstimate a = wos_expected_exit_time(sq, {0.3, 0.6}, mc, 7);
  const McEstimate b = wos_expected_exit_time(sq, {0.3, 0.6}, mc, 7);
  r.checks.push_back(check_le("wos-reproducible", std::abs(a.mean - b.mean) + std::abs(a.std_error - b.std_error), 0.0,
                              "same seed twice"));
  r.seconds = since(t0);
  return r;
}

CriterionResult hitting_time_law(const AcceptanceOptions& opts) {
  CriterionResult r{8, "exact hitting-time sampler against erf", {}, {}, 0.0};
  const auto t0 = Clock::now();
  const double a = 1.0;
  const auto samples = sample_hitting_times(a, opts.paths, opts.seed);
  const double n = static_cast<double>(samples.size());
  const double ks = ks_statistic(samples, [&](double t) { return 1.0 - erf_series(a / (2.0 * std::sqrt(t))); });
  r.checks.push_back(check_lt("e64-ks", ks, 1.36 / std::sqrt(n), "a=1"));
  const double t = a * a / 4.0;
  const double frac = static_cast<double>(std::count_if(samples.begin(), samples.end(), [&](double s) { return s > t; })) / n;
  const double p = erf_series(1.0);
  r.checks.push_back(check_le("e64-survival", std::abs(frac - p), 3.0 * std::sqrt(p * (1.0 - p) / n), "t=a^2/4"));
  r.notes.push_back("KS " + str(ks) + ", survival at a^2/4 " + str(frac) + " vs erf(1) " + str(p));
  r.seconds = since(t0);
  return r;
}

CriterionResult halfstrip(const AcceptanceOptions& opts) {
  CriterionResult r{9, "half-strip exit bound and Monte Carlo spot check", {}, {}, 0.0};
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double b : {0.25, 0.5, 1.0, 2.0, 4.0})
    for (double fx : {0.1, 0.3, 0.5, 0.7, 0.9})
      for (double fg : {0.01, 0.1, 0.5, 1.0, 2.0}) {
        const Point x{fx * b, 0.0};
        const double a = fg * b;
        const double q = halfstrip_exit_top_probability(x, a, b);
        const double bound = halfstrip_bound(x, a, b);
        worst = std::max(worst, q / bound);
        std::ostringstream w;
        w << "b=" << b << " x1/b=" << fx << " (a-x2)/b=" << fg;
        r.checks.push_back(check_le("e69-bound", q, bound, w.str()));
      }
  r.notes.push_back("largest value/bound " + str(worst));
  McConfig mc;
  mc.n_paths = opts.paths;
  mc.seed = opts.seed;
  const Point x{0.5, 0.0};
  const double q = halfstrip_exit_top_probability(x, 1.0, 1.0);
  const McEstimate e = halfstrip_exit_top_mc(x, 1.0, 1.0, mc);
  r.checks.push_back(check_le("e69-mc-agreement", std::abs(e.mean - q), 3.0 * e.std_error, "x=(b/2,0) a=b=1"));
  r.notes.push_back("quadrature " + str(q) + ", Monte Carlo " + str(e.mean) + " +- " + str(e.std_error));
  r.seconds = since(t0);
  return r;
}

CriterionResult lemma_certificate(const AcceptanceOptions& opts) {
  CriterionResult r{10, "localisation lemma on a slitted comb cell", {}, {}, 0.0};
  const auto t0 = Clock::now();
  const SlitDomain ambient = comb(2.0 / 3.0, 1.0, 8);  // eps = 1/4
  // the middle tooth, with its walls extended halfway into the top strip
  const LemmaThreeFrame frame{3.0 / 8.0, 7.0 / 8.0, 1.0 / 8.0};
  std::vector<Point> pts;
  for (double f2 : {0.1, 0.3, 0.6, 0.9, 0.99})
    for (double f1 : {0.1, 0.3, 0.5, 0.7, 0.9}) pts.push_back({frame.p + f1 * frame.b, f2 * frame.a});
  const Lemma3Report rep = verify_lemma3(frame, ambient, pts, comb_spacing(8, 64));
  for (std::size_t k = 0; k < rep.checks.size(); ++k) {
    Check c = rep.checks[k];
    c.where = "x=(" + str(pts[k].x) + "," + str(pts[k].y) + ")";
    r.checks.push_back(std::move(c));
  }
  double tight = INFINITY;
  for (const auto& p : rep.points) tight = std::min(tight, p.margin / p.rhs);
  r.notes.push_back("lambda1 " + str(rep.lambda1) + ", smallest relative margin " + str(tight));

  // the pointwise-in-time bound behind the lemma, at Monte Carlo precision
  McConfig mc;
  mc.n_paths = opts.paths;
  mc.seed = opts.seed;
  mc.eps_shell = 1e-5;
  const SlitDomain dom = lemma_three_domain(ambient, frame);
  std::uint32_t sub = 0;
  for (double f2 : {0.5, 0.9, 0.99})
    for (double t : {0.002, 0.01, 0.05}) {
      const Point x{frame.p + 0.5 * frame.b, f2 * frame.a};
      const McEstimate e = lemma3_joint_probability(dom, frame, x, t, mc, sub++);
      const double bound = lemma3_joint_bound(frame, x, t, rep.lambda1);
      r.checks.push_back(check_le("e70-bound", e.mean - 3.0 * e.std_error, bound,
                                  "x2/a=" + str(f2) + " t=" + str(t)));
    }
  r.seconds = since(t0);
  return r;
}

CriterionResult mass_and_survival() {
  CriterionResult r{11, "near-boundary mass estimate and heat survival bound", {}, {}, 0.0};
  const auto t0 = Clock::now();
  struct Case {
    SlitDomain dom;
    double h;
    std::vector<double> etas;
  };
  std::vector<Case> cases;
  cases.push_back({make_unit_square(), 1.0 / 128, {1.0 / 32, 1.0 / 16, 1.0 / 8, 1.0 / 4, 0.49, 0.6}});
  cases.push_back({comb(2.0 / 3.0, 1.0, 16), comb_spacing(16, 16), {1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0}});
  for (const Case& c : cases) {
    const GridDomain g = rasterize(c.dom, c.h);
    const TorsionSolution v = solve_torsion(g);
    for (const MassRow& row : mass_decomposition(v.field, c.etas)) {
      const std::string w = c.dom.label() + " eta=" + str(row.eta);
      if (row.applicable)
        r.checks.push_back(check_le("e26-certificate", row.lhs, row.rhs, w));
      else
        r.notes.push_back(w + ": not applicable, {d >= eta} carries no mass");
    }
  }
  for (double b : {0.5, 1.0, 2.0})
    for (double fx : {0.05, 0.25, 0.5, 0.75, 0.95})
      for (double s : {0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double t = s * b * b / (pi * pi);
        std::ostringstream w;
        w << "interval b=" << b << " x1/b=" << fx << " pi^2 t/b^2=" << s;
        r.checks.push_back(check_le("e68a-bound", survival_interval(fx * b, b, t), survival_interval_bound(b, t), w.str()));
      }
  // the unit square factorises into two intervals; lambda1 = 2 pi^2
  for (double s : {0.0, 0.01, 0.05, 0.1, 0.5})
    for (const Point x : {Point{0.5, 0.5}, Point{0.1, 0.5}, Point{0.05, 0.05}}) {
      const double p = survival_interval(x.x, 1.0, s) * survival_interval(x.y, 1.0, s);
      const double bound = 2.0 * std::numbers::sqrt2 * std::exp(-s * 2.0 * pi * pi / 4.0);
      std::ostringstream w;
      w << "square x=(" << x.x << "," << x.y << ") t=" << s;
      r.checks.push_back(check_le("e68a-bound", p, bound, w.str()));
    }
  r.seconds = since(t0);
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& done) {
  std::vector<CriterionResult> out;
  SweepCache cache;
  auto keep = [&](CriterionResult r) {
    if (done) done(r);
    out.push_back(std::move(r));
  };
  keep(solver_correctness());
  keep(closed_forms());
  keep(efficiency_bracket());
  keep(comb_bracket(cache));
  keep(localisation_trends(cache));
  keep(hardy_certificate(opts));
  keep(stochastic_agreement(opts));
  keep(hitting_time_law(opts));
  keep(halfstrip(opts));
  keep(lemma_certificate(opts));
  keep(mass_and_survival());
  return out;
}

}  // namespace torsionlab::verify
