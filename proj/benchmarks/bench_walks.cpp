#include <benchmark/benchmark.h>

#include <random>

#include "qwadg/adg.hpp"
#include "qwadg/statevec.hpp"
#include "qwadg/targets.hpp"

using namespace qwadg;

namespace {

constexpr double kPi = 3.14159265358979323846;

WalkSpec random_spec(WalkKind kind, int qubits_per_axis, int steps,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  WalkSpec spec = make_template(
      kind,
      kind == WalkKind::Entangled2D
          ? std::vector<int>{qubits_per_axis, qubits_per_axis}
          : std::vector<int>{qubits_per_axis},
      steps);
  auto params = flatten_params(spec);
  for (double& p : params) p = u(rng);
  set_params(spec, params);
  return spec;
}

void bench_evolve_dtqw(benchmark::State& state) {
  const auto spec = random_spec(WalkKind::DTQW, static_cast<int>(state.range(0)),
                                static_cast<int>(state.range(1)), 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(position_probabilities(evolve(spec)));
}

void bench_evolve_ssqw(benchmark::State& state) {
  const auto spec = random_spec(WalkKind::SSQW, static_cast<int>(state.range(0)),
                                static_cast<int>(state.range(1)), 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(position_probabilities(evolve(spec)));
}

void bench_evolve_entangled2d(benchmark::State& state) {
  const auto spec =
      random_spec(WalkKind::Entangled2D, static_cast<int>(state.range(0)),
                  static_cast<int>(state.range(1)), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(position_probabilities(evolve(spec)));
}

void bench_gradient_ssqw(benchmark::State& state) {
  const auto spec = random_spec(WalkKind::SSQW, 4,
                                static_cast<int>(state.range(0)), 4);
  const auto target = discretize(BimodalParams{4.0, 1.5, 11.0, 1.5, 0.5}, 16);
  OptimizerConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(gradient(spec, target, cfg));
}

void bench_gradient_entangled2d(benchmark::State& state) {
  const auto spec = random_spec(WalkKind::Entangled2D, 3,
                                static_cast<int>(state.range(0)), 5);
  const auto target = discretize(DigitParams{3}, 64);
  OptimizerConfig cfg;
  cfg.cost = CostKind::KL;
  for (auto _ : state)
    benchmark::DoNotOptimize(gradient(spec, target, cfg));
}

}  // namespace

BENCHMARK(bench_evolve_dtqw)->Args({4, 8})->Args({8, 16})->Args({10, 32});
BENCHMARK(bench_evolve_ssqw)->Args({4, 4})->Args({8, 16})->Args({10, 32});
BENCHMARK(bench_evolve_entangled2d)->Args({3, 4})->Args({4, 8})->Args({5, 8});
BENCHMARK(bench_gradient_ssqw)->Arg(2)->Arg(4)->Arg(6);
BENCHMARK(bench_gradient_entangled2d)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
