#include "darpcf/solve.hpp"

#include <algorithm>

namespace darpcf {

void insert_walk_ins(RoutingState& state, std::vector<RequestId>& rejected) {
  const auto& inst = state.instance();
  std::vector<const RequestPair*> walk_ins;
  for (const auto& r : inst.requests) {
    if (!r.chronic()) walk_ins.push_back(&r);
  }
  std::sort(walk_ins.begin(), walk_ins.end(), [](const RequestPair* a, const RequestPair* b) {
    return std::pair(a->release_time, a->id) < std::pair(b->release_time, b->id);
  });
  for (const auto* r : walk_ins) {
    InsertOptions opts;
    opts.frozen_until = r->release_time;
    opts.respect_fixed_prefix = false;
    if (!insert_pair(state, *r, PairMode::fixed_windows,
                     pair_options(PairMode::fixed_windows, std::move(opts)))) {
      rejected.push_back(r->id);
    }
  }
}

SolveResult run_baseline_gih(const Instance& inst) {
  RoutingState state(inst, make_empty_schedules(inst));
  SolveResult result;
  for (const auto& r : inst.requests) {
    if (!r.chronic()) continue;
    if (!insert_pair(state, r, PairMode::fixed_windows, pair_options(PairMode::fixed_windows))) {
      result.rejected.push_back(r.id);
    }
  }
  insert_walk_ins(state, result.rejected);
  result.schedules = std::move(state).release();
  normalize(result);
  return result;
}

void normalize(SolveResult& result) {
  auto& r = result.rejected;
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
}

}  // namespace darpcf
