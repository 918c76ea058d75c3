// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include "filling/flat3.hpp"
#include "filling/gmeasure.hpp"
#include "filling/h2xr.hpp"
#include "filling/solgrp.hpp"

using namespace filling;

namespace {

const flat3::SurfaceSpec& hw_surface() {
  static const flat3::SurfaceSpec s = *flat3::construct_filling(flat3::ManifoldId::M6);
  return s;
}

void BM_Cells(benchmark::State& state, bool parallel) {
  auto m = flat3::make_manifold(flat3::ManifoldId::M6);
  int res = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = parallel ? flat3::complement_cells(m, hw_surface().families, res)
                      : flat3::complement_cells_serial(m, hw_surface().families, res);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK_CAPTURE(BM_Cells, serial, false)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Cells, parallel, true)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_FiberCheck(benchmark::State& state, bool parallel) {
  auto oct = h2xr::build_polygon(2);
  auto fams = h2xr::annulus_orbit(oct, h2xr::standard_seed(oct));
  for (auto _ : state) {
    auto r = parallel ? h2xr::fiber_obstruction_check(oct, fams, state.range(0))
                      : h2xr::fiber_obstruction_check_serial(oct, fams, state.range(0));
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK_CAPTURE(BM_FiberCheck, serial, false)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FiberCheck, parallel, true)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Z2Scan(benchmark::State& state, bool parallel) {
  auto phi = solgrp::AnosovMatrix::standard();
  int bound = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = parallel ? solgrp::z2_scan(phi, bound) : solgrp::z2_scan_serial(phi, bound);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK_CAPTURE(BM_Z2Scan, serial, false)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Z2Scan, parallel, true)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Transversality(benchmark::State& state, bool parallel) {
  auto a = hyp3::make_uhs_point({0.3, -1.0}, 0.5), b = hyp3::make_uhs_point({1.2, 0.4}, 2.5);
  for (auto _ : state) {
    double f = parallel ? gmeasure::transversality_sample(a, b, state.range(0))
                        : gmeasure::transversality_sample_serial(a, b, state.range(0));
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK_CAPTURE(BM_Transversality, serial, false)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Transversality, parallel, true)->Arg(100000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
