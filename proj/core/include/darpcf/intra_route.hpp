#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "darpcf/clustering.hpp"
#include "darpcf/instance.hpp"

namespace darpcf {

struct RouteStop {
  RequestId request = 0;
  StopAction action = StopAction::pickup;
  NodeId node = 0;
  /// Service start relative to the first stop of the route.
  Seconds time = 0;

  friend bool operator==(const RouteStop&, const RouteStop&) = default;
};

/// Shortest open route serving the outbound rides of one mini-cluster.
struct IntraRoute {
  std::vector<RouteStop> stops;

  [[nodiscard]] NodeId first_node() const { return stops.front().node; }
  [[nodiscard]] NodeId last_node() const { return stops.back().node; }
};

[[nodiscard]] Seconds route_duration(const IntraRoute& route);

class InfeasibleCluster : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
};

/// Exact depth-first search over pickup/delivery orders of the members'
/// outbound rides, pruned on precedence, ride time, and a lower bound on the
/// remaining cost. Among optimal orders the first in label order wins, where
/// member k (in the given order) has labels 2k (pickup) and 2k+1 (drop).
/// Throws InfeasibleCluster if no order respects every maximum ride time.
[[nodiscard]] IntraRoute optimal_route(const std::vector<RequestPair>& members,
                                       const TravelMatrix& t, SearchStats* stats = nullptr);

/// A mini-cluster together with its optimal route.
struct RoutedCluster {
  MiniCluster cluster;
  IntraRoute route;
  [[nodiscard]] Seconds duration() const { return route_duration(route); }
};

/// Routes every cluster; a cluster without a feasible order is replaced by
/// singleton clusters of its members.
[[nodiscard]] std::vector<RoutedCluster> route_clusters(const Instance& inst,
                                                        const std::vector<MiniCluster>& clusters);

}  // namespace darpcf
