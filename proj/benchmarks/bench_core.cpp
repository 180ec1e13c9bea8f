#include <benchmark/benchmark.h>

#include "twoslit/ensemble.hpp"
#include "twoslit/guidance.hpp"
#include "twoslit/integrator.hpp"
#include "twoslit/sampler.hpp"
#include "twoslit/sqm.hpp"

namespace {

twoslit::PhysicalParams desk_params() {
  twoslit::PhysicalParams p;
  p.sigma0 = 1.0;
  p.slit_offset = 0.1;
  p.kx = 10.0;
  return p;
}

void BM_velocity(benchmark::State& state) {
  const auto p = desk_params();
  twoslit::PairState s{0.7, -1.3, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(twoslit::try_velocity(p, s));
    s.y1 += 1e-9;
  }
}
BENCHMARK(BM_velocity);

void BM_trajectory_rk45(benchmark::State& state) {
  const auto p = desk_params();
  const double T = static_cast<double>(state.range(0)) / p.spreading_rate();
  const twoslit::IntegratorConfig integ;
  for (auto _ : state)
    benchmark::DoNotOptimize(twoslit::integrate_trajectory(p, {0.7, -1.3, 0.0}, T, integ));
}
BENCHMARK(BM_trajectory_rk45)->Arg(1)->Arg(10);

void BM_table_build(benchmark::State& state) {
  const auto p = desk_params();
  for (auto _ : state) benchmark::DoNotOptimize(twoslit::OneParticleTable(p));
}
BENCHMARK(BM_table_build)->Unit(benchmark::kMillisecond);

void BM_com_offset_sampler(benchmark::State& state) {
  const auto p = desk_params();
  const twoslit::PairSampler sampler(p, twoslit::ComOffset{3.0, 0.5, true});
  auto rng = twoslit::pair_stream(42, 0);
  std::size_t proposals = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sampler.draw(rng, proposals));
}
BENCHMARK(BM_com_offset_sampler);

void BM_joint_detection_probability(benchmark::State& state) {
  const auto p = desk_params();
  const auto screen = twoslit::ScreenConfig::symmetric(20.0, 0.5, 12.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(twoslit::joint_detection_probability(p, screen, 1.0, -1.0));
}
BENCHMARK(BM_joint_detection_probability)->Unit(benchmark::kMicrosecond);

void BM_ensemble(benchmark::State& state) {
  const auto p = desk_params();
  twoslit::SamplerConfig sampler;
  sampler.n_pairs = static_cast<std::size_t>(state.range(0));
  sampler.seed = 7;
  const twoslit::IntegratorConfig integ;
  for (auto _ : state)
    benchmark::DoNotOptimize(twoslit::run_ensemble(p, sampler, integ, 2.0, {.threads = 1}));
}
BENCHMARK(BM_ensemble)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
