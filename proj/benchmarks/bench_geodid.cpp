#include <benchmark/benchmark.h>

#include <random>

#include "geodid/did.hpp"
#include "geodid/frechet.hpp"
#include "geodid/simulate.hpp"
#include "geodid/staggered.hpp"

namespace {

using namespace geodid;

void BM_W2Distance(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto a = QuantileCurve::gaussian(0, 1, m), b = QuantileCurve::gaussian(1, 2, m);
  for (auto _ : state) benchmark::DoNotOptimize(w2_distance(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_W2Distance)->RangeMultiplier(10)->Range(100, 100000)->Complexity();

void BM_WassersteinTransport(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto a = QuantileCurve::gaussian(0, 1, m), b = QuantileCurve::gaussian(1, 1, m),
             w = QuantileCurve::gaussian(0, 2, m);
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein_transport(a, b, w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WassersteinTransport)->RangeMultiplier(10)->Range(100, 100000)->Complexity();

void BM_SphereFrechetMean(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<SpacePoint> pts;
  for (int i = 0; i < state.range(0); ++i) {
    std::vector<double> v(5);
    for (double& x : v) x = u(rng);
    pts.push_back(UnitCompositionPoint::normalized(v));
  }
  for (auto _ : state) benchmark::DoNotOptimize(frechet_mean(pts));
}
BENCHMARK(BM_SphereFrechetMean)->Arg(10)->Arg(100)->Arg(1000);

void BM_EstimateGatt(benchmark::State& state, SimSpace space) {
  SimConfig c;
  c.space = space;
  c.n = static_cast<std::size_t>(state.range(0));
  c.seed = 3;
  const auto sim = generate_panel(c);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_gatt(sim.panel));
}
BENCHMARK_CAPTURE(BM_EstimateGatt, wasserstein, SimSpace::Wasserstein)->Arg(200)->Arg(1000);
BENCHMARK_CAPTURE(BM_EstimateGatt, network, SimSpace::Network)->Arg(200)->Arg(1000);

void BM_GenerateNetworkPanel(benchmark::State& state) {
  SimConfig c;
  c.n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_network_panel(c));
    ++c.seed;
  }
}
BENCHMARK(BM_GenerateNetworkPanel)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
