// Serial reference kernels against the OpenMP ones, and a full torsion solve.
#include <benchmark/benchmark.h>

#include <vector>

#include "torsionlab/elliptic.hpp"
#include "torsionlab/geometry.hpp"
#include "torsionlab/grid.hpp"
#include "torsionlab/kernels.hpp"

using namespace torsionlab;

namespace {

const GridDomain& comb_grid(int n) {
  static std::vector<std::pair<int, GridDomain>> cache;
  for (auto& [k, g] : cache)
    if (k == n) return g;
  cache.emplace_back(n, rasterize(make_comb(CombParams{2.0 / 3.0, 1.0, n}), comb_spacing(n, 16)));
  return cache.back().second;
}

template <bool Omp>
void BM_Apply(benchmark::State& st) {
  const GridDomain& g = comb_grid(static_cast<int>(st.range(0)));
  const auto a = kernels::stencil_of(g);
  std::vector<double> x(static_cast<std::size_t>(g.num_interior()), 1.0), y(x.size());
  for (auto _ : st) {
    if constexpr (Omp) kernels::omp::apply(a, x, y);
    else kernels::reference::apply(a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(x.size()));
}

template <bool Omp>
void BM_Dot(benchmark::State& st) {
  const GridDomain& g = comb_grid(static_cast<int>(st.range(0)));
  std::vector<double> x(static_cast<std::size_t>(g.num_interior()), 0.5);
  for (auto _ : st) {
    double d = Omp ? kernels::omp::dot(x, x) : kernels::reference::dot(x, x);
    benchmark::DoNotOptimize(d);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(x.size()));
}

void BM_SolveTorsion(benchmark::State& st) {
  const GridDomain& g = comb_grid(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto s = solve_torsion(g);
    benchmark::DoNotOptimize(s.stats.iterations);
  }
}

}  // namespace

BENCHMARK(BM_Apply<false>)->Name("apply/reference")->Arg(16)->Arg(64);
BENCHMARK(BM_Apply<true>)->Name("apply/omp")->Arg(16)->Arg(64);
BENCHMARK(BM_Dot<false>)->Name("dot/reference")->Arg(16)->Arg(64);
BENCHMARK(BM_Dot<true>)->Name("dot/omp")->Arg(16)->Arg(64);
BENCHMARK(BM_SolveTorsion)->Name("solve_torsion/comb")->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
