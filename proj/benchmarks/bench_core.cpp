#include <benchmark/benchmark.h>

#include <random>

#include "darpcf/assignment.hpp"
#include "darpcf/generator.hpp"
#include "darpcf/insertion.hpp"
#include "darpcf/intra_route.hpp"
#include "darpcf/solve.hpp"

namespace {

using namespace darpcf;

Instance sample_instance(int pairs) {
  GeneratorConfig cfg;
  cfg.seed = 7;
  cfg.layout = SessionLayout::full_day;
  cfg.pairs_full_day = {pairs, pairs};
  return generate_instance(cfg);
}

void BM_Hungarian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> cost(0, 3600);
  CostMatrix m(n, n + n / 2);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) m.set(i, j, cost(rng));
  }
  for (auto _ : state) benchmark::DoNotOptimize(hungarian(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hungarian)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNCubed);

void BM_OptimalRoute(benchmark::State& state) {
  const auto inst = sample_instance(200);
  const auto k = static_cast<std::size_t>(state.range(0));
  std::vector<RequestPair> members;
  // Patients of one GP make a plausible cluster.
  for (const auto& r : inst.requests) {
    if (r.gp == inst.requests.front().gp && members.size() < k) members.push_back(r);
  }
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(optimal_route(members, inst.travel));
    } catch (const InfeasibleCluster&) {
    }
  }
}
BENCHMARK(BM_OptimalRoute)->DenseRange(2, 6);

void BM_WalkInInsertion(benchmark::State& state) {
  const auto inst = sample_instance(static_cast<int>(state.range(0)));
  const auto base = run_baseline_gih(inst);
  const auto& probe = inst.requests.back();
  RoutingState routing(inst, base.schedules);
  InsertOptions opts;
  opts.frozen_until = probe.release_time;
  opts.respect_fixed_prefix = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(routing.enumerate(fixed_ride(inst, probe, Leg::outbound), opts));
  }
}
BENCHMARK(BM_WalkInInsertion)->Arg(400)->Arg(1600)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
