#pragma once

#include <cstdint>

#include "darpcf/linking.hpp"
#include "darpcf/solve.hpp"

namespace darpcf {

struct MclihOptions {
  std::uint64_t seed = 1;
  AcoParams aco;
  /// Weight of depot legs in the split objective; values above 1 favour
  /// fewer, longer routes.
  double depot_multiplier = 1.0;
  /// Idle time inserted between consecutive clusters of one vehicle.
  Seconds cluster_gap = 0;
  /// Alternative outbound slots tried when an inbound cannot be inserted.
  std::size_t retry_probes = kCoupledPairProbes;
};

/// Mini-cluster linking and insertion: cluster the chronic outbound rides,
/// route each cluster optimally, chain the clusters into one tour, split it
/// into vehicle routes, fix the appointments at the resulting arrivals,
/// insert the return rides, then serve the walk-ins online.
[[nodiscard]] SolveResult run_mclih(const Instance& inst, const MclihOptions& options = {});

}  // namespace darpcf
