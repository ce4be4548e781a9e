#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "darpcf/intra_route.hpp"

namespace darpcf {

/// Complete directed graph over mini-clusters. The arc i -> j costs the
/// drive from the last drop of cluster i to the first pickup of cluster j.
struct LinkingGraph {
  std::size_t size = 0;
  std::vector<Seconds> arc;         // row-major, size * size
  std::vector<Seconds> duration;    // route duration of each cluster
  std::vector<Seconds> from_depot;  // depot -> first pickup
  std::vector<Seconds> to_depot;    // last drop -> depot

  [[nodiscard]] Seconds cost(std::size_t i, std::size_t j) const { return arc[i * size + j]; }
};

[[nodiscard]] LinkingGraph build_linking_graph(const std::vector<RoutedCluster>& clusters,
                                               const TravelMatrix& t, NodeId depot);

/// Order in which the clusters are chained; a permutation of 0..size-1.
using GiantTour = std::vector<std::size_t>;

/// Sum of arc costs along the open path.
[[nodiscard]] Seconds path_cost(const LinkingGraph& g, const GiantTour& tour);

struct AcoParams {
  int iterations = 200;
  double alpha = 1.0;
  double beta = 2.0;
  double evaporation = 0.5;
  std::size_t candidates = 15;
};

/// Ant-colony search for a short open Hamiltonian path, seeded and
/// deterministic. The best path of each iteration is polished by moving
/// single clusters; the result is never worse than the nearest-neighbour
/// path the search starts from.
[[nodiscard]] GiantTour solve_atsp(const LinkingGraph& g, std::uint64_t seed,
                                   const AcoParams& params = {});

/// Inputs of the route-length constrained split of a giant tour, indexed by
/// tour position.
struct SplitData {
  std::vector<Seconds> duration;    // service duration of each cluster
  std::vector<Seconds> link;        // link[i]: from position i to i + 1
  std::vector<Seconds> from_depot;
  std::vector<Seconds> to_depot;
  Seconds max_route = 0;
  /// Weight applied to depot legs in the objective (not in feasibility).
  double depot_multiplier = 1.0;
  /// Optional replacement for the feasibility test of a route serving
  /// positions [first, last); returns false to forbid the route.
  std::function<bool(std::size_t first, std::size_t last)> feasible;
};

[[nodiscard]] SplitData make_split_data(const LinkingGraph& g, const GiantTour& tour,
                                        Seconds max_route);

/// Plain duration of a route serving positions [first, last).
[[nodiscard]] Seconds split_route_duration(const SplitData& d, std::size_t first, std::size_t last);

struct SplitResult {
  /// Half-open position ranges, one per vehicle, in tour order.
  std::vector<std::pair<std::size_t, std::size_t>> routes;
  /// Objective value of the chosen routes.
  double total = 0.0;
  /// Positions [covered, n) could not be served with the vehicles available.
  std::size_t covered = 0;
  [[nodiscard]] bool complete(std::size_t n) const { return covered == n; }
};

/// Layered shortest path over the split graph with at most `vehicles` arcs.
/// If the whole tour cannot be covered, the longest coverable prefix is
/// split optimally instead and `covered` tells where it ends.
[[nodiscard]] SplitResult split_tour(const SplitData& d, int vehicles);

}  // namespace darpcf
