#pragma once

#include <optional>
#include <vector>

#include "darpcf/insertion.hpp"
#include "darpcf/intra_route.hpp"

namespace darpcf {

/// A mini-cluster route pinned to absolute times.
struct PlacedCluster {
  Seconds start = 0;  // service start at the first pickup
  std::vector<Stop> stops;
  [[nodiscard]] Seconds finish() const { return stops.back().planned_time; }
};

/// Earliest start at or after `earliest` such that every drop of the cluster
/// falls inside an opening session and, if `arrivals` is given, the GP
/// congestion limit holds. With `allow_shift` false only `earliest` itself is
/// tried. Every stop gets a point window (the appointments are fixed).
[[nodiscard]] std::optional<PlacedCluster> place_cluster(const Instance& inst,
                                                         const RoutedCluster& cluster,
                                                         Seconds earliest,
                                                         const ArrivalIndex* arrivals,
                                                         bool allow_shift = true);

/// Appends a placed cluster to the end of v's schedule (before the end
/// depot). Returns false, leaving the state unchanged, if the return to the
/// depot would exceed the route-length limit.
bool append_cluster(RoutingState& state, VehicleId v, const PlacedCluster& placed);

/// Time at which the vehicle can start the first pickup of `cluster` when it
/// leaves the last stop before its end depot.
[[nodiscard]] Seconds earliest_cluster_start(const Instance& inst, const Schedule& s,
                                             const RoutedCluster& cluster, Seconds not_before = 0);

}  // namespace darpcf
