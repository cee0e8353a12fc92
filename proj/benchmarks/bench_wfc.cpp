#include <benchmark/benchmark.h>

#include <vector>

#include "wfc/compose.hpp"
#include "wfc/generators.hpp"
#include "wfc/graph.hpp"
#include "wfc/metrics.hpp"

namespace {

wfc::WorkflowNet random_net(std::size_t leaves) {
  wfc::RandomNetSpec spec;
  spec.seed = 7;
  spec.max_leaves = leaves;
  return wfc::random_block_net(spec);
}

void BM_ComputeAllExample(benchmark::State& state) {
  auto net = wfc::build_fixture("M_example");
  for (auto _ : state) benchmark::DoNotOptimize(wfc::compute_all(net));
}
BENCHMARK(BM_ComputeAllExample)->Unit(benchmark::kMillisecond);

void BM_MaxProductValues(benchmark::State& state) {
  auto net = random_net(static_cast<std::size_t>(state.range(0)));
  std::vector<wfc::Rational> weights(net.node_count(), wfc::Rational(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(wfc::max_product_values(net, weights));
  state.counters["nodes"] = static_cast<double>(net.node_count());
}
BENCHMARK(BM_MaxProductValues)->Arg(4)->Arg(8)->Arg(16);

void BM_LongestTrail(benchmark::State& state) {
  auto net = random_net(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wfc::longest_trail(net, wfc::PathBudget{}));
  state.counters["arcs"] = static_cast<double>(net.arc_count());
}
BENCHMARK(BM_LongestTrail)->Arg(4)->Arg(8)->Arg(16);

void BM_Compose(benchmark::State& state) {
  auto op = static_cast<wfc::Operator>(state.range(0));
  auto a = wfc::build_fixture("M_example");
  auto b = random_net(8);
  for (auto _ : state) benchmark::DoNotOptimize(wfc::compose(op, a, b));
  state.SetLabel(std::string(wfc::to_string(op)));
}
BENCHMARK(BM_Compose)->DenseRange(0, 3);

void BM_BoundedLanguage(benchmark::State& state) {
  auto net = wfc::build_fixture("M_example");
  wfc::LanguageBounds bounds;
  bounds.max_visible_length = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wfc::bounded_language(net, bounds));
}
BENCHMARK(BM_BoundedLanguage)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
