#include "latdim/distortion.hpp"
#include "latdim/linalg.hpp"
#include "latdim/local_geometry.hpp"
#include "latdim/pseudorank.hpp"
#include "latdim/random.hpp"
#include "latdim/synth_net.hpp"

#include <benchmark/benchmark.h>

using namespace latdim;

namespace {

MlpNetwork tanh_net(std::size_t width, std::size_t depth) {
  MlpSpec spec;
  spec.input_dim = width;
  spec.layer_dims.assign(depth, width);
  spec.seed = 1;
  return build_mlp(spec);
}

void BM_Svd(benchmark::State& state) {
  const auto n = state.range(0);
  const Matrix m = CounterRng(1).normal_matrix(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(svd(m));
}
BENCHMARK(BM_Svd)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_EstimateRank(benchmark::State& state) {
  const auto n = state.range(0);
  const Matrix m = CounterRng(2).normal_matrix(n / 4, n) + CounterRng(3).normal_matrix(n / 4, 10) *
                                                              CounterRng(4).normal_matrix(10, n) * 5.0;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_rank(m, 0.1, 0.0));
}
BENCHMARK(BM_EstimateRank)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Jacobian(benchmark::State& state) {
  const auto net = tanh_net(static_cast<std::size_t>(state.range(0)), 8);
  const Vector z = CounterRng(5).normal_vector(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(net.jacobian(z, 8));
}
BENCHMARK(BM_Jacobian)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

// One i_rand pair: two Jacobians, two SVDs, two rank estimates, one distance.
void BM_DistortionPair(benchmark::State& state) {
  const auto net = tanh_net(static_cast<std::size_t>(state.range(0)), 8);
  DistortionOptions opts;
  opts.num_pairs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(i_rand(net, 8, opts));
}
BENCHMARK(BM_DistortionPair)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
