#include <benchmark/benchmark.h>

#include "mfu/mfu.hpp"

namespace {

void BM_SliceStepNormal(benchmark::State& state) {
  const mfu::UnivariateTarget target{[](double x) { return -0.5 * x * x; }};
  mfu::RngStream rng(1);
  double x = 0.0;
  for (auto _ : state) {
    x = mfu::slice_step(target, x, 1.0, static_cast<std::size_t>(state.range(0)), rng);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_SliceStepNormal)->Arg(0)->Arg(4);

void BM_ArsDrawNormal(benchmark::State& state) {
  const mfu::UnivariateLogDensity h = [](double x) { return -0.5 * x * x; };
  const mfu::UnivariateLogDensity hp = [](double x) { return -x; };
  mfu::RngStream rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mfu::ars_draw(h, hp, -mfu::kInf, mfu::kInf, {}, rng));
  }
}
BENCHMARK(BM_ArsDrawNormal);

void BM_LogitF(benchmark::State& state) {
  mfu::RngStream rng(3);
  const auto s = mfu::gen_logistic_data(static_cast<std::size_t>(state.range(0)), 5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mfu::logit_f(s.beta_true, s.data));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogitF)->Arg(1000)->Arg(10000);

// One full Gibbs cycle on the K=5 logistic posterior.
void BM_LogisticGibbsCycle(benchmark::State& state) {
  mfu::RngStream rng(4);
  const auto s = mfu::gen_logistic_data(1000, 5, rng);
  mfu::ControlOverrides ov;
  ov.engine = state.range(0) == 0 ? mfu::Engine::Slice : mfu::Engine::Ars;
  const auto control = mfu::make_control(5, ov);
  const auto f = mfu::logit_density(s.data);
  const auto g = mfu::logit_gradient(s.data);
  mfu::GibbsState st{s.beta_true, 0};
  for (auto _ : state) st = mfu::mfu_sample_one(st, f, g, control, rng);
}
BENCHMARK(BM_LogisticGibbsCycle)->Arg(0)->Arg(1)->ArgName("ars");

}  // namespace

BENCHMARK_MAIN();
