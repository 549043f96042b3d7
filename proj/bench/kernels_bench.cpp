#include <benchmark/benchmark.h>

#include <random>

#include "nlse/integrator.hpp"
#include "nlse/laplacian.hpp"

using namespace nlse;

namespace {

struct Setup {
  GridSpec grid;
  BoundaryClassification cls;
  ComplexField psi;
  std::vector<double> d;

  explicit Setup(std::size_t n)
      : grid(GridSpec::centered(3, n, 0.2)), cls(classify_points(grid)), psi(grid),
        d(cls.boundary.size(), 0.5) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    for (std::size_t p = 0; p < grid.size(); ++p) psi[p] = {ud(rng), ud(rng)};
  }
};

template <class F>
void run(benchmark::State& state, F&& kernel) {
  const Setup s(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    ComplexField out = kernel(s);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(s.grid.size()));
}

void BM_Cd2Reference(benchmark::State& state) {
  run(state, [](const Setup& s) {
    return reference::cd_laplacian(s.psi, BoundaryKind::kDirichlet, s.cls, s.d);
  });
}

void BM_Cd2Parallel(benchmark::State& state) {
  run(state, [](const Setup& s) { return cd_laplacian(s.psi, BoundaryKind::kDirichlet, s.cls, s.d); });
}

void BM_Shoc4Reference(benchmark::State& state) {
  run(state, [](const Setup& s) {
    return reference::shoc_laplacian(s.psi, BoundaryKind::kDirichlet, s.cls, s.d);
  });
}

void BM_Shoc4Parallel(benchmark::State& state) {
  run(state, [](const Setup& s) { return shoc_laplacian(s.psi, BoundaryKind::kDirichlet, s.cls, s.d); });
}

void BM_Rk4Step(benchmark::State& state) {
  const Setup s(static_cast<std::size_t>(state.range(0)));
  const auto scheme = state.range(1) == 0 ? SchemeOrder::kCd2 : SchemeOrder::kShoc4;
  Rk4Stepper stepper(NlseOperator(s.grid, PhysParams::free(s.grid, 1.0, 1.0), scheme,
                                  BoundaryKind::kMsd, DegeneratePolicy::kZeroFallback));
  ComplexField psi = s.psi;
  for (auto _ : state) {
    stepper.step(psi, 1e-4);
    benchmark::DoNotOptimize(psi.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(s.grid.size()));
}

}  // namespace

BENCHMARK(BM_Cd2Reference)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cd2Parallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Shoc4Reference)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Shoc4Parallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Rk4Step)->Args({64, 0})->Args({64, 1})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
