// Seed sweep on the height-5 tree: OpenMP across seeds vs one after another.
#include <benchmark/benchmark.h>

#include <numeric>

#include "ccnacct/sim/simulator.hpp"

namespace {

ccnacct::SimConfig tree_config() {
  ccnacct::SimConfig cfg;
  cfg.topology = ccnacct::Topology::binary_tree(5);
  cfg.traffic.rate = 500;
  cfg.traffic.pool = 10;
  cfg.traffic.duration = 2000;
  cfg.producer.payload_size = 1000;
  return cfg;
}

std::vector<std::uint64_t> seeds(std::int64_t n) {
  std::vector<std::uint64_t> s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 1);
  return s;
}

void BM_SweepParallel(benchmark::State& state) {
  const auto cfg = tree_config();
  const auto s = seeds(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ccnacct::run_sweep(cfg, s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepSerial(benchmark::State& state) {
  const auto cfg = tree_config();
  const auto s = seeds(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ccnacct::run_sweep_serial(cfg, s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SweepParallel)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepSerial)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_MAIN();
