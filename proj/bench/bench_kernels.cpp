// Serial against OpenMP-parallel execution of the parallel kernels.

#include "toricsr/subdivision.hpp"
#include "toricsr/toric.hpp"

#include <benchmark/benchmark.h>

using namespace toricsr;

namespace {

Exec mode(const benchmark::State &state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State &state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_LatticeEnumeration(benchmark::State &state) {
  const auto P = dilated_simplex(40, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(lattice_points(P, false, kDefaultPointLimit, mode(state)));
  label(state);
}

void BM_Width(benchmark::State &state) {
  // skew, wide and without short axis directions, so the dual search box stays large
  const auto P = LatticePolytope::hull({{0, 0, 0, 0},
                                        {97, 31, -44, 12},
                                        {-23, 88, 19, -61},
                                        {41, -57, 93, 27},
                                        {-66, 14, -38, 91},
                                        {52, 63, 71, 58}});
  for (auto _ : state)
    benchmark::DoNotOptimize(lattice_width(P, mode(state)));
  label(state);
}

// A pointed cone whose triangulation has several simplicial pieces with large parallelepipeds.
void BM_HilbertSubcones(benchmark::State &state) {
  const RationalCone C{{{5, -2, 1, 12}, {-4, 5, 1, 12}, {1, 5, -4, 12}, {-3, -5, -1, 12},
                        {4, 3, 5, 12}, {-2, 1, 5, 12}}};
  for (auto _ : state)
    benchmark::DoNotOptimize(hilbert_candidates(C, mode(state)));
  label(state);
}

void BM_SubdivisionValidation(benchmark::State &state) {
  const auto P = dilated_simplex(6, 3);
  HeightFunction h;
  for (const IntVector &x : lattice_points(P))
    h.emplace(x, Rat(dot(x, x)));
  const auto S = regular_subdivision(P, h);
  for (auto _ : state)
    benchmark::DoNotOptimize(validate(S, mode(state)));
  label(state);
}

} // namespace

BENCHMARK(BM_LatticeEnumeration)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Width)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HilbertSubcones)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubdivisionValidation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
