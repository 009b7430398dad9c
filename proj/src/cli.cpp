#include "torsionlab/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "torsionlab/elliptic.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/functionals.hpp"
#include "torsionlab/geometry.hpp"
#include "torsionlab/grid.hpp"
#include "torsionlab/io.hpp"
#include "torsionlab/localisation.hpp"
#include "torsionlab/stochastic.hpp"
#include "torsionlab/verify/acceptance.hpp"

namespace torsionlab::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using io::fmt;

Kind kind_from_string(std::string_view s) {
  if (s == "geom") return Kind::geom;
  if (s == "solve") return Kind::solve;
  if (s == "efficiency") return Kind::efficiency;
  if (s == "sweep") return Kind::sweep;
  if (s == "mc") return Kind::mc;
  if (s == "verify-all") return Kind::verify_all;
  throw InvalidArgument("unknown experiment kind '" + std::string(s) + "'");
}

std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::geom: return "geom";
    case Kind::solve: return "solve";
    case Kind::efficiency: return "efficiency";
    case Kind::sweep: return "sweep";
    case Kind::mc: return "mc";
    case Kind::verify_all: return "verify-all";
  }
  return "?";
}

namespace {

// Typed view of the parameter record; rejects keys it was not told about.
class Params {
 public:
  Params(const json& j, std::string_view kind, std::initializer_list<const char*> keys) : j_(j) {
    if (!j.is_object()) throw InvalidArgument("parameters must be a JSON object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items())
      if (!allowed.count(k)) throw InvalidArgument("unknown parameter '" + k + "' for " + std::string(kind));
  }

  bool has(const char* key) const { return j_.contains(key) && !j_[key].is_null(); }
  const json& raw(const char* key) const {
    if (!has(key)) throw InvalidArgument(std::string("missing parameter '") + key + "'");
    return j_[key];
  }
  double real(const char* key, double fallback) const { return has(key) ? real(key) : fallback; }
  double real(const char* key) const {
    try {
      return io::real_from_json(raw(key));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(std::string("parameter '") + key + "': " + e.what());
    }
  }
  double positive(const char* key, double fallback) const {
    const double v = real(key, fallback);
    if (!(v > 0.0)) throw InvalidArgument(std::string("parameter '") + key + "' must be positive");
    return v;
  }
  std::int64_t integer(const char* key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const double v = real(key);
    if (v != std::floor(v) || std::abs(v) > 9e15)
      throw InvalidArgument(std::string("parameter '") + key + "' must be an integer");
    return static_cast<std::int64_t>(v);
  }
  bool flag(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!raw(key).is_boolean()) throw InvalidArgument(std::string("parameter '") + key + "' must be true or false");
    return raw(key).get<bool>();
  }
  std::string text(const char* key, std::string fallback) const {
    if (!has(key)) return fallback;
    if (!raw(key).is_string()) throw InvalidArgument(std::string("parameter '") + key + "' must be a string");
    return raw(key).get<std::string>();
  }
  std::vector<Point> points(const char* key) const {
    std::vector<Point> out;
    const json& a = raw(key);
    if (!a.is_array()) throw InvalidArgument(std::string("parameter '") + key + "' must be an array of [x,y]");
    for (const auto& p : a) {
      if (!p.is_array() || p.size() != 2) throw InvalidArgument("a point must be [x,y], got " + p.dump());
      out.push_back({io::real_from_json(p[0]), io::real_from_json(p[1])});
    }
    return out;
  }
  std::vector<double> reals(const char* key) const {
    std::vector<double> out;
    const json& a = raw(key);
    if (a.is_array())
      for (const auto& v : a) out.push_back(io::real_from_json(v));
    else
      out.push_back(io::real_from_json(a));
    return out;
  }

 private:
  const json& j_;
};

io::DomainSpec domain_param(const Params& p, const char* fallback) {
  const json spec = p.has("domain") ? p.raw("domain") : json(fallback);
  return io::parse_domain(spec);
}

// Explicit h wins; combs default to 1/(n q); anything else to 1/128.
double spacing_param(const Params& p, const io::DomainSpec& d, int default_q) {
  if (p.has("h")) {
    const double h = p.positive("h", 0.0);
    if (h > 0.25) throw InvalidArgument("parameter 'h' must be at most 1/4");
    return h;
  }
  const std::int64_t q = p.integer("q", default_q);
  if (q < 4) throw InvalidArgument("parameter 'q' must be at least 4");
  if (d.comb_n > 0) return comb_spacing(d.comb_n, static_cast<int>(q));
  return 1.0 / 128.0;
}

// Rasterisation would reject these too, but only after compute has begun.
void check_spacing(const SlitDomain& d, double h) {
  const BoundingBox b = d.bbox();
  for (double side : {b.width(), b.height()}) {
    const double k = side / h;
    if (std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, k))
      throw InvalidArgument("grid spacing h=" + fmt(h) + " does not divide the bounding-box side " + fmt(side));
  }
}

SolverOptions solver_param(const Params& p) {
  SolverOptions o;
  o.tol = p.positive("tol", 1e-10);
  if (o.tol > 1e-4) throw InvalidArgument("parameter 'tol' must be at most 1e-4");
  return o;
}

json point_json(Point x) { return json::array({x.x, x.y}); }

std::string where_point(Point x) { return "x=(" + fmt(x.x) + "," + fmt(x.y) + ")"; }

struct Context {
  const ExperimentConfig& cfg;
  Report& report;

  fs::path file(const std::string& name) {
    report.artifacts.push_back(name);
    return cfg.output_dir / name;
  }
};

// ---------------------------------------------------------------------------
// geom

struct GeomPlan {
  io::DomainSpec dom;
  int resolution;

  static GeomPlan parse(const json& j) {
    Params p(j, "geom", {"domain", "resolution"});
    GeomPlan g{domain_param(p, "square"), static_cast<int>(p.integer("resolution", 256))};
    if (g.resolution < 16 || g.resolution > 4096) throw InvalidArgument("parameter 'resolution' must be in [16, 4096]");
    return g;
  }

  void run(Context& ctx) const {
    const SlitDomain& d = dom.domain;
    const Inradius inr = inradius(d, resolution);
    const DistanceMoments dm = distance_moments(d, resolution);
    const BoundingBox b = d.bbox();
    json& r = ctx.report.results;
    r["label"] = d.label();
    r["area"] = d.area();
    r["inradius"] = inr.value;
    r["inradius_error_bound"] = inr.error_bound;
    r["inradius_center"] = point_json(inr.center);
    r["d2_l1"] = dm.d2_l1;
    r["distance_efficiency"] = distance_efficiency(d, dm);
    r["simply_connected"] = is_simply_connected(d);
    r["slits"] = d.slits().size();
    r["bbox"] = {{"lo", point_json(b.lo)}, {"hi", point_json(b.hi)}};

    if (dom.comb_n > 0) {
      const double eps = dom.comb_eps;
      const double n = dom.comb_n;
      const double tol = inr.error_bound;
      r["comb"] = {{"n", dom.comb_n}, {"eps", eps}};
      if (dom.comb) r["comb"]["pre_asymptotic"] = dom.comb->pre_asymptotic();
      auto& c = ctx.report.checks;
      c.push_back(check_ge("e45-lower", inr.value, eps / 2 - tol, "inradius vs eps/2"));
      c.push_back(check_le("e45-upper", inr.value, eps + tol, "inradius vs eps"));
      const double s = eps * eps * eps + 1.0 / (n * n);
      c.push_back(check_ge("e43-lower", dm.d2_l1, s / 48.0, "||d^2||_1"));
      c.push_back(check_le("e44-upper", dm.d2_l1, s / 3.0, "||d^2||_1"));
    }

    // distance field on cell centers of the sampling lattice, inside points only
    const int cx = std::max(1, static_cast<int>(std::lround(b.width() * resolution)));
    const int cy = std::max(1, static_cast<int>(std::lround(b.height() * resolution)));
    io::Csv csv({"x", "y", "d"});
    for (int j = 0; j < cy; ++j)
      for (int i = 0; i < cx; ++i) {
        const Point x{b.lo.x + (i + 0.5) * b.width() / cx, b.lo.y + (j + 0.5) * b.height() / cy};
        const double dist = distance_to_boundary(d, x);
        if (dist > 0.0) csv.row({fmt(x.x), fmt(x.y), fmt(dist)});
      }
    csv.write(ctx.file("distance.csv"));
    io::write_atomic(ctx.file("domain.svg"), io::svg_domain(d));
    ctx.report.summary = d.label() + ": area " + fmt(d.area()) + ", inradius " + fmt(inr.value) + " (+" +
                         fmt(inr.error_bound) + ")";
  }
};

// ---------------------------------------------------------------------------
// solve

struct SolvePlan {
  io::DomainSpec dom;
  double h;
  SolverOptions opts;
  bool eigen;
  bool field;

  static SolvePlan parse(const json& j) {
    Params p(j, "solve", {"domain", "h", "q", "tol", "eigen", "field"});
    auto d = domain_param(p, "square");
    const double h = spacing_param(p, d, 16);
    check_spacing(d.domain, h);
    return {std::move(d), h, solver_param(p), p.flag("eigen", false), p.flag("field", true)};
  }

  void run(Context& ctx) const {
    const GridDomain g = rasterize(dom.domain, h);
    const TorsionSolution s = solve_torsion(g, opts);
    const FieldNorms nv = field_norms(s.field);
    json& r = ctx.report.results;
    r["label"] = g.label();
    r["h"] = h;
    r["unknowns"] = g.num_interior();
    r["stats"] = {{"iterations", s.stats.iterations},
                  {"relative_residual", s.stats.relative_residual},
                  {"energy", s.stats.energy},
                  {"tol", opts.tol}};
    r["torsion"] = {{"l1", nv.l1}, {"linf", nv.linf}, {"efficiency", nv.l1 / (g.domain_area() * nv.linf)}};

    std::optional<double> lambda;
    if (eigen) {
      EigenOptions eo;
      eo.inner_tol = opts.tol;
      const EigenResult e = principal_eigenvalue(g, eo);
      lambda = e.lambda1;
      r["eigen"] = {{"lambda1_discrete", e.lambda1},
                    {"residual", e.residual},
                    {"outer_iterations", e.outer_iterations},
                    {"note", "discrete 5-point value at h=" + fmt(h) + ", no extrapolation"}};
    }
    const DistanceMoments dm = distance_moments(dom.domain, g);
    r["distance"] = {{"d2_l1", dm.d2_l1}, {"inradius", dm.inradius}};
    for (Check& c : torsion_certificates(s.field, dm, lambda)) ctx.report.checks.push_back(std::move(c));

    io::write_atomic(ctx.file("stats.json"), r["stats"].dump(2) + "\n");
    if (field) {
      const auto cv = cell_values(s.field);
      const auto cd = g.cell_distance();
      io::Csv csv({"x", "y", "value"});
      for (int c = 0; c < g.num_cells(); ++c)
        if (cd[static_cast<std::size_t>(c)] > 0.0) {
          const Point x = g.cell_center(c);
          csv.row({fmt(x.x), fmt(x.y), fmt(cv[static_cast<std::size_t>(c)])});
        }
      csv.write(ctx.file("field.csv"));
    }
    ctx.report.summary = g.label() + ": " + std::to_string(s.stats.iterations) + " CG iterations, ||v||_inf " +
                         fmt(nv.linf) + (lambda ? ", lambda1 " + fmt(*lambda) : "");
  }
};

// ---------------------------------------------------------------------------
// efficiency

struct EfficiencyPlan {
  io::DomainSpec dom;
  double h;
  SolverOptions opts;
  double c_hardy;
  std::string csv;

  static EfficiencyPlan parse(const json& j) {
    Params p(j, "efficiency", {"domain", "h", "q", "tol", "c_hardy", "csv"});
    auto d = domain_param(p, "square");
    const double h = spacing_param(p, d, 16);
    check_spacing(d.domain, h);
    return {std::move(d), h, solver_param(p), p.positive("c_hardy", 16.0), p.text("csv", "")};
  }

  void run(Context& ctx) const {
    const EfficiencyReport e = check_theorem1_bracket(dom.domain, c_hardy, h, opts);
    json& r = ctx.report.results;
    r["label"] = dom.domain.label();
    r["phi"] = e.phi;
    r["dee"] = e.dee;
    r["lower"] = e.lower;
    r["upper"] = e.upper;
    r["h"] = e.h;
    r["constants_used"] = {{"c_hardy", e.constants_used.c_hardy},
                           {"frak_c_surrogate", e.constants_used.frak_c_surrogate},
                           {"bessel_j0_sq", e.constants_used.bessel_j0_sq}};
    ctx.report.checks.push_back(check_ge("e12-lower", e.phi, e.lower, dom.domain.label()));
    ctx.report.checks.push_back(check_le("e12-upper", e.phi, e.upper, dom.domain.label()));
    if (!csv.empty()) {
      const std::string alpha = dom.comb ? fmt(dom.comb->alpha) : "";
      const std::string c = dom.comb ? fmt(dom.comb->c) : "";
      io::append_csv_row(csv, {"label", "n", "alpha", "c", "h", "phi", "dee", "lower", "upper", "pass"},
                         {dom.domain.label(), std::to_string(dom.comb_n), alpha, c, fmt(e.h), fmt(e.phi),
                          fmt(e.dee), fmt(e.lower), fmt(e.upper), e.pass() ? "true" : "false"});
    }
    ctx.report.summary = std::string(e.pass() ? "PASS" : "FAIL") + " e12 " + dom.domain.label() + ": " +
                         fmt(e.lower) + " <= phi=" + fmt(e.phi) + " <= " + fmt(e.upper);
  }
};

// ---------------------------------------------------------------------------
// sweep

struct SweepPlan {
  SweepConfig sc;

  static SweepPlan parse(const json& j) {
    Params p(j, "sweep", {"alpha", "c", "n", "q", "tol", "allow_large"});
    SweepPlan s;
    s.sc.alpha = p.real("alpha", 2.0 / 3.0);
    s.sc.c = p.real("c", 1.0);
    s.sc.q = static_cast<int>(p.integer("q", 16));
    s.sc.tol = p.real("tol", 1e-10);
    s.sc.cross_sections = true;
    if (p.has("n")) {
      s.sc.n_list.clear();
      for (double n : p.reals("n")) {
        if (n != std::floor(n) || n > 1e6) throw InvalidArgument("parameter 'n' must hold integers");
        s.sc.n_list.push_back(static_cast<int>(n));
      }
    }
    s.sc.validate();
    if (!p.flag("allow_large", false) && s.sc.n_list.back() > 64)
      throw InvalidArgument("n > 64 needs allow_large (about 4e6 unknowns at n=128, q=16)");
    return s;
  }

  void run(Context& ctx) const {
    const auto rows = comb_sweep(sc);
    io::Csv csv({"n", "eps", "h", "unknowns", "iterations", "phi", "ratio", "mask_measure", "lower_e40",
                 "upper_e40", "pass_e40", "pre_asymptotic", "kappa_target", "d2_fraction", "ratio_bound",
                 "pass_ratio_bound"});
    json jr = json::array();
    io::SvgSeries ratio{"ratio", {}, {}}, target{"kappa target", {}, {}};
    std::vector<io::SvgSeries> profiles;
    for (const SweepRow& row : rows) {
      const std::string w = "n=" + std::to_string(row.n);
      ctx.report.checks.push_back(check_ge("e40-lower", row.phi, row.lower_e40, w));
      ctx.report.checks.push_back(check_le("e40-upper", row.phi, row.upper_e40, w));
      ctx.report.checks.push_back(check_le("thm1iii-bound", row.ratio, row.ratio_bound, w));
      const std::string kt = row.kappa_target ? fmt(*row.kappa_target) : "";
      csv.row({std::to_string(row.n), fmt(row.eps), fmt(row.h), std::to_string(row.unknowns),
               std::to_string(row.iterations), fmt(row.phi), fmt(row.ratio), fmt(row.mask_measure),
               fmt(row.lower_e40), fmt(row.upper_e40), row.pass_e40 ? "true" : "false",
               row.pre_asymptotic ? "true" : "false", kt, fmt(row.d2_fraction), fmt(row.ratio_bound),
               row.pass_ratio_bound ? "true" : "false"});
      json o = {{"n", row.n},           {"eps", row.eps},
                {"h", row.h},           {"unknowns", row.unknowns},
                {"iterations", row.iterations}, {"phi", row.phi},
                {"ratio", row.ratio},   {"mask_measure", row.mask_measure},
                {"lower_e40", row.lower_e40},   {"upper_e40", row.upper_e40},
                {"pre_asymptotic", row.pre_asymptotic}, {"d2_fraction", row.d2_fraction},
                {"ratio_bound", row.ratio_bound}};
      o["kappa_target"] = row.kappa_target ? json(*row.kappa_target) : json(nullptr);
      jr.push_back(std::move(o));

      io::Csv cs({"x", "d", "v"});
      io::SvgSeries prof{w, {}, {}};
      for (const CrossSectionPoint& pt : row.cross_section) {
        cs.row({fmt(pt.x), fmt(pt.d), fmt(pt.v)});
        prof.x.push_back(pt.x);
        prof.y.push_back(pt.v);
      }
      cs.write(ctx.file("cross_section_n" + std::to_string(row.n) + ".csv"));
      profiles.push_back(std::move(prof));
      ratio.x.push_back(row.n);
      ratio.y.push_back(row.ratio);
      if (row.kappa_target) {
        target.x.push_back(row.n);
        target.y.push_back(*row.kappa_target);
      }
    }
    csv.write(ctx.file("sweep.csv"));
    std::vector<io::SvgSeries> rs{ratio};
    if (!target.x.empty()) rs.push_back(target);
    io::write_atomic(ctx.file("ratio.svg"), io::svg_plot(rs, "mass fraction on A_n", "n", "ratio"));
    io::write_atomic(ctx.file("cross_sections.svg"),
                     io::svg_plot(profiles, "torsion along x2 = 1 - eps/2", "x1", "v"));
    ctx.report.results["rows"] = std::move(jr);
    ctx.report.results["alpha"] = sc.alpha;
    ctx.report.results["c"] = sc.c;
    ctx.report.results["q"] = sc.q;
    std::ostringstream s;
    s << "alpha=" << fmt(sc.alpha) << " c=" << fmt(sc.c) << " ratios";
    for (const SweepRow& row : rows) s << ' ' << row.n << ':' << fmt(row.ratio);
    ctx.report.summary = s.str();
  }
};

// ---------------------------------------------------------------------------
// mc

enum class McMode { wos, hitting, halfstrip, lemma3 };

struct McPlan {
  McMode mode;
  McConfig mc;
  bool dump = false;
  // wos and lemma3
  std::optional<io::DomainSpec> dom;
  std::vector<Point> points;
  double h = 0.0;
  bool compare = true;
  // hitting and halfstrip
  double a = 1.0, b = 1.0, x1 = 0.5, x2 = 0.0;
  // lemma3
  LemmaThreeFrame frame;
  std::vector<double> times;

  static McPlan parse(const json& j, std::uint64_t seed) {
    Params p(j, "mc", {"mode", "paths", "eps_shell", "max_steps", "dump", "domain", "points", "h", "q",
                       "compare", "a", "b", "x1", "x2", "p", "times"});
    McPlan m;
    const std::string mode = p.text("mode", "wos");
    if (mode == "wos") m.mode = McMode::wos;
    else if (mode == "hitting") m.mode = McMode::hitting;
    else if (mode == "halfstrip") m.mode = McMode::halfstrip;
    else if (mode == "lemma3") m.mode = McMode::lemma3;
    else throw InvalidArgument("mode must be wos, hitting, halfstrip or lemma3");
    m.mc.n_paths = p.integer("paths", 100000);
    m.mc.seed = seed;
    m.mc.eps_shell = p.real("eps_shell", 1e-5);
    m.mc.max_steps = p.integer("max_steps", 100000);
    m.mc.validate();
    m.dump = p.flag("dump", false);

    switch (m.mode) {
      case McMode::wos: {
        m.dom = domain_param(p, "square");
        m.h = spacing_param(p, *m.dom, 128);
        m.compare = p.flag("compare", true);
        if (m.compare) check_spacing(m.dom->domain, m.h);
        if (p.has("points")) m.points = p.points("points");
        else m.points.push_back(inradius(m.dom->domain, 128).center);
        for (Point x : m.points)
          if (distance_to_boundary(m.dom->domain, x) <= m.mc.eps_shell)
            throw InvalidArgument("point " + where_point(x) + " is not inside the domain");
        break;
      }
      case McMode::hitting:
        m.a = p.positive("a", 1.0);
        break;
      case McMode::halfstrip:
        m.a = p.real("a", 1.0);
        m.b = p.positive("b", 1.0);
        m.x1 = p.real("x1", m.b / 2);
        m.x2 = p.real("x2", 0.0);
        if (!(m.x1 > 0.0 && m.x1 < m.b && m.x2 < m.a)) throw InvalidArgument("x must lie in (0,b) x (-inf,a)");
        break;
      case McMode::lemma3: {
        m.dom = domain_param(p, "comb:n=8,alpha=2/3,c=1");
        m.frame.p = p.real("p", 3.0 / 8.0);
        m.frame.a = p.real("a", 7.0 / 8.0);
        m.frame.b = p.real("b", 1.0 / 8.0);
        m.frame.validate();
        check_frame_inside(m.dom->domain, m.frame);
        m.h = p.has("h") ? spacing_param(p, *m.dom, 64)
                         : (m.dom->comb_n > 0 ? comb_spacing(m.dom->comb_n, 64) : 1.0 / 512);
        check_spacing(m.dom->domain, m.h);
        if (p.has("points")) {
          m.points = p.points("points");
        } else {
          for (double f2 : {0.1, 0.3, 0.6, 0.9, 0.99})
            for (double f1 : {0.1, 0.3, 0.5, 0.7, 0.9})
              m.points.push_back({m.frame.p + f1 * m.frame.b, f2 * m.frame.a});
        }
        for (Point x : m.points)
          if (!m.frame.contains(x)) throw InvalidArgument("point " + where_point(x) + " is outside the frame");
        if (p.has("times")) m.times = p.reals("times");
        for (double t : m.times)
          if (!(t > 0.0)) throw InvalidArgument("times must be positive");
        break;
      }
    }
    return m;
  }

  void run(Context& ctx) const {
    json& r = ctx.report.results;
    r["paths"] = mc.n_paths;
    r["seed"] = mc.seed;
    switch (mode) {
      case McMode::wos: return run_wos(ctx, r);
      case McMode::hitting: return run_hitting(ctx, r);
      case McMode::halfstrip: return run_halfstrip(ctx, r);
      case McMode::lemma3: return run_lemma3(ctx, r);
    }
  }

  static json estimate_json(const McEstimate& e) {
    return {{"mean", e.mean}, {"std_error", e.std_error}, {"n_effective", e.n_effective}, {"failures", e.failures}};
  }

  void run_wos(Context& ctx, json& r) const {
    r["mode"] = "wos";
    r["eps_shell"] = mc.eps_shell;
    std::optional<GridDomain> g;
    std::optional<TorsionSolution> v;
    if (compare) {
      g.emplace(rasterize(dom->domain, h));
      v.emplace(solve_torsion(*g));
    }
    io::Csv csv({"x", "y", "mean", "std_error", "solver"});
    json pts = json::array();
    int agree = 0;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const McEstimate e = wos_expected_exit_time(dom->domain, points[k], mc, static_cast<std::uint32_t>(k));
      json o = estimate_json(e);
      o["x"] = point_json(points[k]);
      std::string solver;
      if (v) {
        const double s = interpolate(v->field, points[k]);
        o["solver"] = s;
        solver = fmt(s);
        if (e.agrees(s, 3.0)) ++agree;
      }
      pts.push_back(std::move(o));
      csv.row({fmt(points[k].x), fmt(points[k].y), fmt(e.mean), fmt(e.std_error), solver});
    }
    r["points"] = std::move(pts);
    csv.write(ctx.file("wos.csv"));
    if (v) {
      // at least 95% of the points within 3 standard errors
      const double need = std::ceil(0.95 * static_cast<double>(points.size()));
      ctx.report.checks.push_back(check_ge("wos-agreement", agree, need,
                                           dom->domain.label() + " points within 3 SE, h=" + fmt(h)));
    }
    ctx.report.summary = "walk-on-spheres at " + std::to_string(points.size()) + " points" +
                         (v ? ", " + std::to_string(agree) + " within 3 SE of the solver" : "");
  }

  void run_hitting(Context& ctx, json& r) const {
    r["mode"] = "hitting";
    r["a"] = a;
    const auto samples = sample_hitting_times(a, mc.n_paths, mc.seed);
    const double ks = ks_statistic(samples, [&](double t) { return 1.0 - hitting_time_survival(a, t); });
    const double crit = 1.36 / std::sqrt(static_cast<double>(samples.size()));
    r["ks"] = ks;
    r["ks_critical_5pct"] = crit;
    ctx.report.checks.push_back(check_lt("e64-ks", ks, crit, "a=" + fmt(a)));
    if (dump) {
      io::Csv csv({"tau"});
      for (double s : samples) csv.row({fmt(s)});
      csv.write(ctx.file("hitting_samples.csv"));
    }
    ctx.report.summary = "KS " + fmt(ks) + " vs critical " + fmt(crit);
  }

  void run_halfstrip(Context& ctx, json& r) const {
    r["mode"] = "halfstrip";
    const Point x{x1, x2};
    const double q = halfstrip_exit_top_probability(x, a, b);
    const double bound = halfstrip_bound(x, a, b);
    const McEstimate e = halfstrip_exit_top_mc(x, a, b, mc);
    r["x"] = point_json(x);
    r["a"] = a;
    r["b"] = b;
    r["quadrature"] = q;
    r["bound"] = bound;
    r["mc"] = estimate_json(e);
    ctx.report.checks.push_back(check_le("e69-bound", q, bound, where_point(x)));
    ctx.report.checks.push_back(check_le("e69-mc-agreement", std::abs(e.mean - q), 3.0 * e.std_error, "k=3"));
    ctx.report.summary = "exit-top probability " + fmt(q) + " (MC " + fmt(e.mean) + " +- " + fmt(e.std_error) +
                         "), bound " + fmt(bound);
  }

  void run_lemma3(Context& ctx, json& r) const {
    r["mode"] = "lemma3";
    r["frame"] = {{"p", frame.p}, {"a", frame.a}, {"b", frame.b}};
    r["h"] = h;
    const Lemma3Report rep = verify_lemma3(frame, dom->domain, points, h);
    r["lambda1"] = rep.lambda1;
    io::Csv csv({"x1", "x2", "v", "first", "second", "rhs", "margin", "pass"});
    for (std::size_t k = 0; k < rep.points.size(); ++k) {
      const Lemma3Point& pt = rep.points[k];
      Check c = rep.checks[k];
      c.where = where_point(pt.x);
      ctx.report.checks.push_back(std::move(c));
      csv.row({fmt(pt.x.x), fmt(pt.x.y), fmt(pt.v), fmt(pt.first), fmt(pt.second), fmt(pt.rhs), fmt(pt.margin),
               pt.pass ? "true" : "false"});
    }
    csv.write(ctx.file("lemma3.csv"));
    if (!times.empty()) {
      const SlitDomain d = lemma_three_domain(dom->domain, frame);
      json jt = json::array();
      std::uint32_t sub = 0;
      for (Point x : points)
        for (double t : times) {
          const McEstimate e = lemma3_joint_probability(d, frame, x, t, mc, sub++);
          const double bound = lemma3_joint_bound(frame, x, t, rep.lambda1);
          json o = estimate_json(e);
          o["x"] = point_json(x);
          o["t"] = t;
          o["bound"] = bound;
          jt.push_back(std::move(o));
          ctx.report.checks.push_back(
              check_le("e70-bound", e.mean - 3.0 * e.std_error, bound, where_point(x) + " t=" + fmt(t)));
        }
      r["joint"] = std::move(jt);
    }
    ctx.report.summary = "lemma bound at " + std::to_string(points.size()) + " points, lambda1 " + fmt(rep.lambda1);
  }
};

// ---------------------------------------------------------------------------
// verify-all

struct VerifyPlan {
  verify::AcceptanceOptions opts;

  static VerifyPlan parse(const json& j, std::uint64_t seed) {
    Params p(j, "verify-all", {"paths"});
    VerifyPlan v;
    v.opts.seed = seed;
    v.opts.paths = p.integer("paths", 100000);
    if (v.opts.paths < 1000) throw InvalidArgument("parameter 'paths' must be at least 1000");
    return v;
  }

  void run(Context& ctx) const {
    std::ostringstream lines;
    json crit = json::array();
    int failed = 0;
    verify::run_acceptance(opts, [&](const verify::CriterionResult& c) {
      if (!c.pass()) ++failed;
      lines << "criterion " << c.id << (c.pass() ? " PASS " : " FAIL ") << c.title << ": " << c.summary() << '\n';
      for (Check ch : c.checks) {
        ch.where = "criterion " + std::to_string(c.id) + (ch.where.empty() ? "" : ": " + ch.where);
        ctx.report.checks.push_back(std::move(ch));
      }
      crit.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass()}, {"notes", c.notes}});
    });
    io::write_atomic(ctx.file("acceptance.txt"), lines.str());
    ctx.report.results["criteria"] = std::move(crit);
    ctx.report.summary = lines.str() + std::to_string(11 - failed) + " of 11 criteria pass";
  }
};

}  // namespace

// ---------------------------------------------------------------------------

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (k != "kind" && k != "parameters" && k != "output_dir" && k != "seed" && k != "threads")
      throw InvalidArgument("unknown config key '" + k + "'");
  ExperimentConfig c;
  if (!j.contains("kind") || !j["kind"].is_string()) throw InvalidArgument("config needs a string 'kind'");
  c.kind = kind_from_string(j["kind"].get<std::string>());
  if (j.contains("parameters")) c.params = j["parameters"];
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) throw InvalidArgument("'output_dir' must be a string");
    c.output_dir = j["output_dir"].get<std::string>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw InvalidArgument("'seed' must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("threads")) {
    if (!j["threads"].is_number_integer() || j["threads"].get<int>() < 0)
      throw InvalidArgument("'threads' must be a non-negative integer");
    c.threads = j["threads"].get<int>();
  }
  return c;
}

json ExperimentConfig::to_json() const {
  return {{"kind", std::string(to_string(kind))},
          {"parameters", params},
          {"output_dir", output_dir.generic_string()},
          {"seed", seed},
          {"threads", threads}};
}

void ExperimentConfig::validate() const {
  if (threads < 0) throw InvalidArgument("threads must be non-negative");
  if (output_dir.empty()) throw InvalidArgument("output_dir must not be empty");
  switch (kind) {
    case Kind::geom: GeomPlan::parse(params); break;
    case Kind::solve: SolvePlan::parse(params); break;
    case Kind::efficiency: EfficiencyPlan::parse(params); break;
    case Kind::sweep: SweepPlan::parse(params); break;
    case Kind::mc: McPlan::parse(params, seed); break;
    case Kind::verify_all: VerifyPlan::parse(params, seed); break;
  }
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

json Report::to_json() const {
  json failed = json::array();
  for (const Check& c : checks)
    if (!c.pass) failed.push_back(c.name);
  return {{"tool_version", tool_version}, {"config", config},   {"results", results},
          {"checks", checks},             {"pass", pass()},     {"failed", failed},
          {"artifacts", artifacts},       {"wall_time", wall_time}};
}

Report run(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  if (config.threads > 0) omp_set_num_threads(config.threads);
  Report report;
  report.config = config.to_json();
  Context ctx{config, report};
  // every plan parses fully before any compute starts
  switch (config.kind) {
    case Kind::geom: GeomPlan::parse(config.params).run(ctx); break;
    case Kind::solve: SolvePlan::parse(config.params).run(ctx); break;
    case Kind::efficiency: EfficiencyPlan::parse(config.params).run(ctx); break;
    case Kind::sweep: SweepPlan::parse(config.params).run(ctx); break;
    case Kind::mc: McPlan::parse(config.params, config.seed).run(ctx); break;
    case Kind::verify_all: VerifyPlan::parse(config.params, config.seed).run(ctx); break;
  }
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  io::write_atomic(config.output_dir / "report.json", report.to_json().dump(2) + "\n");
  return report;
}

}  // namespace torsionlab::cli
