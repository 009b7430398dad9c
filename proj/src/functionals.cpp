#include "torsionlab/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "torsionlab/errors.hpp"
#include "torsionlab/kernels.hpp"

namespace torsionlab {

namespace k = kernels::omp;

namespace {

double max_of(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, e);
  return m;
}

// The sampled inradius is a lower bound; never let it fall below a distance
// the quadrature itself has seen, or D could exceed 1.
DistanceMoments finish(const SlitDomain& dom, double d2_sum, double cell_area, double seen_max,
                       double spacing, int resolution) {
  const Inradius r = inradius(dom, std::max(64, resolution));
  DistanceMoments m;
  m.d2_l1 = d2_sum * cell_area;
  m.inradius = std::max(r.value, seen_max);
  m.inradius_error = r.error_bound;
  m.spacing = spacing;
  return m;
}

}  // namespace

DistanceMoments distance_moments(const SlitDomain& dom, int resolution) {
  if (resolution < 1) throw InvalidArgument("resolution must be positive");
  const BoundingBox box = dom.bbox();
  const int cx = std::max(1, static_cast<int>(std::ceil(box.width() * resolution - 1e-9)));
  const int cy = std::max(1, static_cast<int>(std::ceil(box.height() * resolution - 1e-9)));
  const double hx = box.width() / cx;
  const double hy = box.height() / cy;

  std::vector<double> row_sum(static_cast<std::size_t>(cy), 0.0);
  std::vector<double> row_max(static_cast<std::size_t>(cy), 0.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (int j = 0; j < cy; ++j) {
    double s = 0.0, mx = 0.0;
    for (int i = 0; i < cx; ++i) {
      const double d = distance_to_boundary(dom, {box.lo.x + (i + 0.5) * hx, box.lo.y + (j + 0.5) * hy});
      s += d * d;
      mx = std::max(mx, d);
    }
    row_sum[static_cast<std::size_t>(j)] = s;
    row_max[static_cast<std::size_t>(j)] = mx;
  }
  double total = 0.0;
  for (double s : row_sum) total += s;
  return finish(dom, total, hx * hy, max_of(row_max), std::max(hx, hy), resolution);
}

DistanceMoments distance_moments(const SlitDomain& dom, const GridDomain& grid) {
  const auto cd = grid.cell_distance();
  std::vector<double> d2(cd.size());
  for (std::size_t c = 0; c < cd.size(); ++c) d2[c] = cd[c] * cd[c];
  const double h = grid.h();
  return finish(dom, k::sum(d2), h * h, max_of(cd), h, static_cast<int>(std::lround(1.0 / h)));
}

double efficiency(const ScalarField& torsion) {
  const FieldNorms n = field_norms(torsion);
  if (!(n.linf > 0.0)) throw InvalidArgument("torsion field vanishes identically");
  return n.l1 / (torsion.grid().domain_area() * n.linf);
}

double efficiency(const SlitDomain& dom, double h, const SolverOptions& opts) {
  const GridDomain grid = rasterize(dom, h);
  return efficiency(solve_torsion(grid, opts).field);
}

double distance_efficiency(const SlitDomain& dom, const DistanceMoments& m) {
  return m.d2_l1 / (dom.area() * m.inradius * m.inradius);
}

double distance_efficiency(const SlitDomain& dom, int resolution) {
  return distance_efficiency(dom, distance_moments(dom, resolution));
}

EfficiencyReport theorem1_bracket(double phi, double dee, double c_hardy, double h) {
  if (!(c_hardy > 0.0)) throw InvalidArgument("Hardy constant must be positive");
  EfficiencyReport r;
  r.phi = phi;
  r.dee = dee;
  r.h = h;
  r.constants_used.c_hardy = c_hardy;
  const double m = constants::kDim;
  r.lower = dee / (2.0 * m * r.constants_used.frak_c_surrogate * c_hardy);
  r.upper = c_hardy * r.constants_used.bessel_j0_sq * dee;
  r.pass_lower = r.lower <= phi;
  r.pass_upper = phi <= r.upper;
  return r;
}

EfficiencyReport check_theorem1_bracket(const SlitDomain& dom, double c_hardy, double h,
                                        const SolverOptions& opts) {
  const GridDomain grid = rasterize(dom, h);
  const double phi = efficiency(solve_torsion(grid, opts).field);
  const double dee = distance_efficiency(dom, distance_moments(dom, grid));
  return theorem1_bracket(phi, dee, c_hardy, h);
}

double hardy_quotient(const GridDomain& grid, const ScalarField& w) {
  if (&w.grid() != &grid) throw InvalidArgument("field belongs to a different grid");
  const auto vals = w.values();
  const auto dist = grid.node_distance();
  std::vector<double> aw(vals.size()), weighted(vals.size());
  k::apply(kernels::stencil_of(grid), vals, aw);
  for (std::size_t i = 0; i < vals.size(); ++i) weighted[i] = vals[i] * vals[i] / (dist[i] * dist[i]);
  const double h2 = grid.h() * grid.h();
  const double den = h2 * k::sum(weighted);
  if (!(den > 0.0)) throw InvalidArgument("Hardy quotient of the zero function");
  return h2 * k::dot(vals, aw) / den;
}

std::vector<Check> torsion_certificates(const ScalarField& torsion, const DistanceMoments& dist,
                                        std::optional<double> lambda1) {
  const ConstantsUsed c;
  const FieldNorms n = field_norms(torsion);
  const double r2 = dist.inradius * dist.inradius;
  std::vector<Check> out;
  out.push_back(check_le("e11-upper", n.l1, c.c_hardy * dist.d2_l1));
  out.push_back(check_ge("e24-lower", n.l1, 0.25 * dist.d2_l1));
  out.push_back(check_le("e14-upper", n.linf, c.frak_c_surrogate * c.c_hardy * r2));
  out.push_back(check_ge("e16-lower", n.linf, r2 / c.bessel_j0_sq));

  const GridDomain& g = torsion.grid();
  const auto cv = cell_values(torsion);
  const auto cd = g.cell_distance();
  const double slack = g.h() / std::sqrt(2.0);
  double worst = INFINITY;
  for (std::size_t i = 0; i < cv.size(); ++i) {
    if (cd[i] <= 0.0) continue;
    worst = std::min(worst, cv[i] - (0.25 * cd[i] * cd[i] - cd[i] * slack));
  }
  if (std::isfinite(worst)) out.push_back(check_ge("e10c-pointwise", worst, 0.0));

  if (lambda1) {
    const double p = *lambda1 * n.linf;
    out.push_back(check_ge("e2-lower", p, 1.0 - 1e-6));
    out.push_back(check_le("e2-upper", p, c.frak_c_surrogate + 1e-6));
  }
  return out;
}

}  // namespace torsionlab
