#include "torsionlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "torsionlab/errors.hpp"
#include "torsionlab/log.hpp"

namespace torsionlab {

namespace {

double orientation(Point a, Point b, Point c) { return cross(b - a, c - a); }

// Closed-segment intersection, including touching and collinear overlap.
bool segments_intersect(const Segment& s, const Segment& t, double tol, double dtol) {
  const double d1 = orientation(s.a, s.b, t.a);
  const double d2 = orientation(s.a, s.b, t.b);
  const double d3 = orientation(t.a, t.b, s.a);
  const double d4 = orientation(t.a, t.b, s.b);
  if (((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol)) &&
      ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol)))
    return true;
  return point_segment_distance(t.a, s) <= dtol || point_segment_distance(t.b, s) <= dtol ||
         point_segment_distance(s.a, t) <= dtol || point_segment_distance(s.b, t) <= dtol;
}

// Both interiors strictly cross each other.
bool segments_cross_properly(const Segment& s, const Segment& t, double tol) {
  const double d1 = orientation(s.a, s.b, t.a);
  const double d2 = orientation(s.a, s.b, t.b);
  const double d3 = orientation(t.a, t.b, s.a);
  const double d4 = orientation(t.a, t.b, s.b);
  return ((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol)) &&
         ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol));
}

double signed_area(const std::vector<Point>& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    s += cross(p, q);
  }
  return 0.5 * s;
}

std::string describe(Point p) {
  std::ostringstream os;
  os << '(' << p.x << ", " << p.y << ')';
  return os.str();
}

}  // namespace

double point_segment_distance(Point p, const Segment& s) {
  const Point e = s.b - s.a;
  const double len2 = dot(e, e);
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(dot(p - s.a, e) / len2, 0.0, 1.0);
  return norm(s.a + t * e - p);
}

SlitDomain::SlitDomain(std::vector<Point> outer, std::vector<Segment> slits, std::string label)
    : outer_(std::move(outer)), slits_(std::move(slits)), label_(std::move(label)) {
  if (outer_.size() < 3) throw InvalidArgument("outer polygon needs at least 3 vertices");
  for (const Point& p : outer_)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw InvalidArgument("outer polygon has a non-finite vertex");

  area_ = signed_area(outer_);
  if (!(area_ > 0.0))
    throw InvalidArgument("outer polygon must be counterclockwise with positive area");

  bbox_.lo = bbox_.hi = outer_.front();
  for (const Point& p : outer_) {
    bbox_.lo.x = std::min(bbox_.lo.x, p.x);
    bbox_.lo.y = std::min(bbox_.lo.y, p.y);
    bbox_.hi.x = std::max(bbox_.hi.x, p.x);
    bbox_.hi.y = std::max(bbox_.hi.y, p.y);
  }
  const double scale = std::max(bbox_.width(), bbox_.height());
  const double tol = 1e-12 * scale * scale;

  const std::size_t m = outer_.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Segment ei{outer_[i], outer_[(i + 1) % m]};
    if (norm(ei.b - ei.a) <= 1e-14 * scale)
      throw InvalidArgument("outer polygon has a repeated vertex at " + describe(ei.a));
    boundary_.push_back(ei);
    for (std::size_t j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;  // adjacent through the wrap
      const Segment ej{outer_[j], outer_[(j + 1) % m]};
      if (segments_intersect(ei, ej, tol, 1e-12 * scale))
        throw InvalidArgument("outer polygon is not simple near " + describe(ei.a));
    }
  }

  const double on_tol = 1e-12 * scale;
  for (const Segment& s : slits_) {
    for (Point p : {s.a, s.b, 0.5 * (s.a + s.b)}) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw InvalidArgument("slit has a non-finite endpoint");
      bool on_edge = false;
      for (std::size_t i = 0; i < m && !on_edge; ++i)
        on_edge = point_segment_distance(p, boundary_[i]) <= on_tol;
      if (!on_edge && !inside_outer(p))
        throw InvalidArgument("slit point " + describe(p) + " lies outside the outer polygon");
    }
    for (std::size_t i = 0; i < m; ++i)
      if (segments_cross_properly(s, boundary_[i], tol))
        throw InvalidArgument("slit from " + describe(s.a) + " crosses the outer boundary");
    boundary_.push_back(s);
  }

  const std::size_t nb = boundary_.size();
  ax_.resize(nb);
  ay_.resize(nb);
  ex_.resize(nb);
  ey_.resize(nb);
  inv_len2_.resize(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    const Segment& s = boundary_[k];
    ax_[k] = s.a.x;
    ay_[k] = s.a.y;
    ex_[k] = s.b.x - s.a.x;
    ey_[k] = s.b.y - s.a.y;
    const double len2 = ex_[k] * ex_[k] + ey_[k] * ey_[k];
    inv_len2_[k] = len2 > 0.0 ? 1.0 / len2 : 0.0;
  }
}

bool SlitDomain::inside_outer(Point p) const {
  bool inside = false;
  const std::size_t m = outer_.size();
  for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
    const Point& a = outer_[i];
    const Point& b = outer_[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xc) inside = !inside;
    }
  }
  return inside;
}

double SlitDomain::distance_to_features(Point p) const {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t nb = ax_.size();
  const double* ax = ax_.data();
  const double* ay = ay_.data();
  const double* ex = ex_.data();
  const double* ey = ey_.data();
  const double* il = inv_len2_.data();
#pragma omp simd reduction(min : best)
  for (std::size_t k = 0; k < nb; ++k) {
    const double rx = p.x - ax[k];
    const double ry = p.y - ay[k];
    double t = (rx * ex[k] + ry * ey[k]) * il[k];
    t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
    const double dx = rx - t * ex[k];
    const double dy = ry - t * ey[k];
    const double d2 = dx * dx + dy * dy;
    best = d2 < best ? d2 : best;
  }
  return std::sqrt(best);
}

SlitDomain SlitDomain::with_slits(std::span<const Segment> extra, std::string label) const {
  std::vector<Segment> all = slits_;
  all.insert(all.end(), extra.begin(), extra.end());
  return SlitDomain(outer_, std::move(all), std::move(label));
}

bool is_simply_connected(const SlitDomain& dom) {
  const auto slits = dom.slits();
  const auto outer = dom.boundary().first(dom.outer().size());
  const BoundingBox box = dom.bbox();
  const double dtol = 1e-12 * std::max(box.width(), box.height());
  const double tol = dtol * dtol;
  std::vector<char> reached(slits.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < slits.size(); ++i)
    for (const Segment& e : outer)
      if (segments_intersect(slits[i], e, tol, dtol)) {
        reached[i] = 1;
        stack.push_back(i);
        break;
      }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < slits.size(); ++j)
      if (!reached[j] && segments_intersect(slits[i], slits[j], tol, dtol)) {
        reached[j] = 1;
        stack.push_back(j);
      }
  }
  return std::all_of(reached.begin(), reached.end(), [](char r) { return r != 0; });
}

double distance_to_boundary(const SlitDomain& dom, Point x) {
  if (!dom.inside_outer(x)) return 0.0;
  return dom.distance_to_features(x);
}

// ---------------------------------------------------------------------------

void CombParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgument("comb alpha must lie in (0,1)");
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("comb c must be positive");
  if (n < 1) throw InvalidArgument("comb n must be >= 1");
  if (!(eps() < 1.0))
    throw InvalidArgument("comb eps = c n^-alpha must be < 1 (slits would leave the square)");
}

int CombParams::threshold(double alpha, double c) {
  // 1e-12 slack: 64^(1/6) and 8^(2/3) evaluate a hair below 2 and 4.
  constexpr double slack = 1.0 - 1e-12;
  for (int n = 1; n < 1 << 30; ++n) {
    const double dn = static_cast<double>(n);
    if (std::pow(dn, alpha) >= slack * 2.0 * c && c * std::pow(dn, 1.0 - alpha) >= slack * 2.0)
      return n;
  }
  throw InvalidArgument("N_{alpha,c} exceeds 2^30");
}

SlitDomain make_unit_square() {
  return SlitDomain({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {}, "unit-square");
}

SlitDomain make_rectangle(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("rectangle sides must be positive");
  std::ostringstream label;
  label << "rectangle-" << a << 'x' << b;
  return SlitDomain({{0, 0}, {a, 0}, {a, b}, {0, b}}, {}, label.str());
}

SlitDomain make_regular_polygon(int sides, double radius, Point center) {
  if (sides < 3) throw InvalidArgument("regular polygon needs >= 3 sides");
  if (!(radius > 0.0)) throw InvalidArgument("regular polygon radius must be positive");
  std::vector<Point> v(static_cast<std::size_t>(sides));
  for (int k = 0; k < sides; ++k) {
    // exact quarter-turn vertices keep the bounding box exact when 4 | sides
    double cs = 0.0, sn = 0.0;
    if (4 * k % sides == 0) {
      const int q = 4 * k / sides;
      constexpr double cq[] = {1, 0, -1, 0};
      constexpr double sq[] = {0, 1, 0, -1};
      cs = cq[q];
      sn = sq[q];
    } else {
      const double th = 2.0 * std::numbers::pi * k / sides;
      cs = std::cos(th);
      sn = std::sin(th);
    }
    v[static_cast<std::size_t>(k)] = {center.x + radius * cs, center.y + radius * sn};
  }
  std::ostringstream label;
  label << "regular-" << sides << "-gon";
  return SlitDomain(std::move(v), {}, label.str());
}

SlitDomain make_comb(int n, double eps) {
  if (n < 1) throw InvalidArgument("comb n must be >= 1");
  if (!(eps > 0.0)) throw InvalidArgument("comb eps must be positive");
  if (!(eps < 1.0)) throw InvalidArgument("comb eps must be < 1 (slits would leave the square)");
  std::vector<Segment> slits;
  slits.reserve(static_cast<std::size_t>(n - 1));
  for (int k = 1; k < n; ++k) {
    const double x = static_cast<double>(k) / n;
    slits.push_back({{x, 0.0}, {x, 1.0 - eps}});
  }
  std::ostringstream label;
  label << "comb-n" << n << "-eps" << eps;
  return SlitDomain({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, std::move(slits), label.str());
}

SlitDomain make_comb(const CombParams& params) {
  params.validate();
  if (params.pre_asymptotic()) {
    std::ostringstream os;
    os << "comb n=" << params.n << " is below N_{alpha,c}=" << params.n_min()
       << " (alpha=" << params.alpha << ", c=" << params.c << ")";
    log::warn(os.str());
  }
  return make_comb(params.n, params.eps());
}

void LemmaThreeFrame::validate() const {
  if (!(b > 0.0)) throw InvalidArgument("lemma frame needs b > 0");
  if (!(a >= b)) throw InvalidArgument("lemma frame needs a >= b");
}

SlitDomain lemma_three_domain(const SlitDomain& ambient, const LemmaThreeFrame& frame) {
  frame.validate();
  const Segment sides[] = {frame.bottom(), frame.left(), frame.right()};
  return ambient.with_slits(sides, ambient.label() + "+lemma-frame");
}

Inradius inradius(const SlitDomain& dom, int resolution) {
  if (resolution < 1) throw InvalidArgument("inradius resolution must be positive");
  const BoundingBox box = dom.bbox();
  const double step = 1.0 / resolution;
  const int nxs = static_cast<int>(std::ceil(box.width() / step)) + 1;
  const int nys = static_cast<int>(std::ceil(box.height() / step)) + 1;

  std::vector<double> row_best(static_cast<std::size_t>(nys), -1.0);
  std::vector<int> row_arg(static_cast<std::size_t>(nys), 0);
#pragma omp parallel for schedule(dynamic, 4)
  for (int j = 0; j < nys; ++j) {
    double best = -1.0;
    int arg = 0;
    const double y = std::min(box.lo.y + j * step, box.hi.y);
    for (int i = 0; i < nxs; ++i) {
      const double x = std::min(box.lo.x + i * step, box.hi.x);
      const double d = distance_to_boundary(dom, {x, y});
      if (d > best) {
        best = d;
        arg = i;
      }
    }
    row_best[static_cast<std::size_t>(j)] = best;
    row_arg[static_cast<std::size_t>(j)] = arg;
  }
  int jbest = 0;
  for (int j = 1; j < nys; ++j)
    if (row_best[static_cast<std::size_t>(j)] > row_best[static_cast<std::size_t>(jbest)])
      jbest = j;

  Inradius out;
  out.center = {std::min(box.lo.x + row_arg[static_cast<std::size_t>(jbest)] * step, box.hi.x),
                std::min(box.lo.y + jbest * step, box.hi.y)};
  out.value = row_best[static_cast<std::size_t>(jbest)];
  out.error_bound = step * std::numbers::sqrt2 / 2.0;

  // pattern search; never lowers the value, so the bound stays valid
  double s = 0.5 * step;
  const double stop = 1e-10 * std::max(box.width(), box.height());
  while (s > stop) {
    bool moved = false;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        if (dx == 0 && dy == 0) continue;
        const Point q{out.center.x + dx * s, out.center.y + dy * s};
        const double d = distance_to_boundary(dom, q);
        if (d > out.value) {
          out.value = d;
          out.center = q;
          moved = true;
        }
      }
    if (!moved) s *= 0.5;
  }
  return out;
}

}  // namespace torsionlab
