#include "torsionlab/localisation.hpp"

#include <cmath>
#include <sstream>

#include "torsionlab/constants.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/functionals.hpp"
#include "torsionlab/kernels.hpp"
#include "torsionlab/log.hpp"

namespace torsionlab {

namespace {

double masked_sum(std::span<const double> values, const std::vector<std::uint8_t>& mask) {
  std::vector<double> m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m[i] = mask[i] ? values[i] : 0.0;
  return kernels::omp::sum(m);
}

}  // namespace

double localisation_ratio(const ScalarField& torsion, const CellMask& mask) {
  const GridDomain& g = torsion.grid();
  if (mask.cells.size() != static_cast<std::size_t>(g.num_cells()))
    throw InvalidArgument("mask does not match the field's grid");
  const double total = kernels::omp::sum(torsion.values());
  if (!(total > 0.0)) throw InvalidArgument("torsion field has no mass");
  // every unknown touches four cells with weight 1/4, so the full mask gives total
  return masked_sum(cell_values(torsion), mask.cells) / total;
}

double localisation_ratio(const SlitDomain& dom, const CellMask& mask, double h,
                          const SolverOptions& opts) {
  const GridDomain grid = rasterize(dom, h);
  return localisation_ratio(solve_torsion(grid, opts).field, mask);
}

void SweepConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0,1)");
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("c must be positive");
  if (q < 8) throw InvalidArgument("grid multiplier q must be at least 8");
  if (!(tol > 0.0 && tol <= 1e-6)) throw InvalidArgument("tolerance must lie in (0, 1e-6]");
  if (n_list.empty()) throw InvalidArgument("n list is empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 4) throw InvalidArgument("every n must be at least 4");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw InvalidArgument("n list must be strictly ascending");
  }
}

std::pair<double, double> comb_efficiency_bracket(double alpha, double c, int n) {
  const double nn = n;
  const double s = c * std::pow(nn, -alpha) + std::pow(nn, 2.0 * alpha - 2.0) / (c * c);
  return {s / (3072.0 * constants::kTorsionBoundSurrogate), 64.0 * constants::kBesselJ0Squared / 3.0 * s};
}

double kappa_target(double c) { return c * c * c / (1.0 + c * c * c); }

std::vector<SweepRow> comb_sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<SweepRow> rows;
  for (int n : cfg.n_list) {
    const CombParams params{cfg.alpha, cfg.c, n};
    params.validate();
    const SlitDomain dom = make_comb(params);
    const double h = comb_spacing(n, cfg.q);
    const GridDomain grid = rasterize(dom, h);
    const TorsionSolution sol = solve_torsion(grid, {cfg.tol, 0});

    SweepRow r;
    r.n = n;
    r.eps = params.eps();
    r.h = h;
    r.unknowns = grid.num_interior();
    r.iterations = sol.stats.iterations;
    r.phi = efficiency(sol.field);
    const CellMask mask = superlevel_mask(grid, 1.0 / (2.0 * n));
    r.ratio = localisation_ratio(sol.field, mask);
    r.mask_measure = mask.measure;
    std::tie(r.lower_e40, r.upper_e40) = comb_efficiency_bracket(cfg.alpha, cfg.c, n);
    r.pass_e40 = r.lower_e40 <= r.phi && r.phi <= r.upper_e40;
    r.pre_asymptotic = params.pre_asymptotic();
    if (std::abs(cfg.alpha - 2.0 / 3.0) < 1e-12) r.kappa_target = kappa_target(cfg.c);

    const auto cd = grid.cell_distance();
    std::vector<double> d2(cd.size());
    for (std::size_t i = 0; i < cd.size(); ++i) d2[i] = cd[i] * cd[i];
    r.d2_fraction = masked_sum(d2, mask.cells) / kernels::omp::sum(d2);
    r.ratio_bound = std::sqrt(2.0 * constants::kDim * constants::kHardySimplyConnected * r.d2_fraction);
    r.pass_ratio_bound = r.ratio <= r.ratio_bound;

    if (cfg.cross_sections) {
      const double y = 1.0 - r.eps / 2.0;
      for (int i = 0; i < grid.nx(); ++i) {
        const Point p{i * h, y};
        r.cross_section.push_back({p.x, distance_to_boundary(dom, p), interpolate(sol.field, p)});
      }
    }
    log::info("sweep n=" + std::to_string(n) + " phi=" + std::to_string(r.phi) +
              " ratio=" + std::to_string(r.ratio));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<MassRow> mass_decomposition(const ScalarField& torsion, const std::vector<double>& eta_list,
                                        double c_hardy) {
  for (std::size_t i = 0; i < eta_list.size(); ++i) {
    if (!(eta_list[i] > 0.0)) throw InvalidArgument("eta values must be positive");
    if (i > 0 && eta_list[i] <= eta_list[i - 1]) throw InvalidArgument("eta values must ascend");
  }
  const GridDomain& g = torsion.grid();
  const double h2 = g.h() * g.h();
  const auto cv = cell_values(torsion);
  const auto cd = g.cell_distance();
  const double total = h2 * kernels::omp::sum(cv);

  std::vector<MassRow> rows;
  for (double eta : eta_list) {
    MassRow r;
    r.eta = eta;
    const CellMask mask = superlevel_mask(g, eta);
    std::vector<double> d2(cd.size());
    for (std::size_t i = 0; i < cd.size(); ++i) d2[i] = mask.cells[i] ? cd[i] * cd[i] : 0.0;
    r.d2_outer = h2 * kernels::omp::sum(d2);
    r.outer = h2 * masked_sum(cv, mask.cells);
    r.inner = total - r.outer;
    r.applicable = r.d2_outer > 0.0 && r.outer > 0.0;
    if (r.applicable) {
      const double x = 2.0 * constants::kDim * c_hardy * eta * eta * g.domain_area() / r.d2_outer;
      r.lhs = r.inner / r.outer;
      r.rhs = x + std::sqrt(x);
      r.pass = r.lhs <= r.rhs;
    } else {
      r.pass = true;
    }
    rows.push_back(r);
  }
  return rows;
}

std::vector<MassRow> mass_decomposition(const SlitDomain& dom, double h,
                                        const std::vector<double>& eta_list,
                                        const SolverOptions& opts) {
  const GridDomain grid = rasterize(dom, h);
  return mass_decomposition(solve_torsion(grid, opts).field, eta_list);
}

}  // namespace torsionlab
