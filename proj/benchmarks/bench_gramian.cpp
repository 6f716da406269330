#include <numbers>

#include <benchmark/benchmark.h>

#include "rapidstab/demo_systems.hpp"
#include "rapidstab/feedback.hpp"
#include "rapidstab/gramian.hpp"
#include "rapidstab/sim.hpp"

namespace {

using namespace rapidstab;

void BM_WeightedGramianString(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto sys = demo_string(n, kDefaultStringControlWidth);
  const WeightProfile w(0.5, 2.0 * std::numbers::pi);
  for (auto _ : state) benchmark::DoNotOptimize(weighted_gramian(sys, w));
  state.SetLabel(sys.label());
}
BENCHMARK(BM_WeightedGramianString)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Expm(benchmark::State& state) {
  const auto sys = demo_skew(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(expm(sys.A(), 0.37));
}
BENCHMARK(BM_Expm)->Arg(4)->Arg(16)->Arg(40);

void BM_SynthesizeOscillator(benchmark::State& state) {
  const auto sys = demo_oscillator();
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize(sys, 0.5, std::numbers::pi, std::numbers::pi,
                                        GramianVariant::kStandard));
  }
}
BENCHMARK(BM_SynthesizeOscillator)->Unit(benchmark::kMicrosecond);

void BM_ApplyViaOdes(benchmark::State& state) {
  const auto sys = demo_skew(8, 11);
  const WeightProfile w(0.5, 2.0);
  const Eigen::VectorXd xi = Eigen::VectorXd::Ones(8);
  for (auto _ : state) benchmark::DoNotOptimize(apply_gramian_via_odes(sys, w, xi));
}
BENCHMARK(BM_ApplyViaOdes)->Unit(benchmark::kMillisecond);

void BM_IntegrateClosedLoop(benchmark::State& state) {
  const auto law = synthesize(demo_skew(8, 11), 0.5, 2.0, 2.0, GramianVariant::kStandard);
  const Eigen::VectorXd x0 = Eigen::VectorXd::Ones(8);
  for (auto _ : state) benchmark::DoNotOptimize(integrate(law.closed_loop, x0, 20.0));
}
BENCHMARK(BM_IntegrateClosedLoop)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
