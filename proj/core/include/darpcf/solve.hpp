#pragma once

#include <vector>

#include "darpcf/insertion.hpp"

namespace darpcf {

struct SolveResult {
  Schedules schedules;
  std::vector<RequestId> rejected;  // ascending
};

/// Online phase shared by all schedulers: walk-ins in release order (ties by
/// id), each inserted as a fixed-window pair with everything planned before
/// its release frozen. Rejected ids are appended to `rejected`.
void insert_walk_ins(RoutingState& state, std::vector<RequestId>& rejected);

/// Greedy insertion baseline: chronic patients keep their original
/// appointment and are inserted offline as fixed-window pairs, then the
/// walk-ins follow online.
[[nodiscard]] SolveResult run_baseline_gih(const Instance& inst);

/// Sorts and deduplicates the rejection list.
void normalize(SolveResult& result);

}  // namespace darpcf
