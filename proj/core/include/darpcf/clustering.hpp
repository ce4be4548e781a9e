#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "darpcf/instance.hpp"

namespace darpcf {

/// Orders in which two outbound rides i and j can share a vehicle that is
/// empty before and after, starting at the pickup of i:
///   p1: pickup i, drop i, pickup j, drop j
///   p2: pickup i, pickup j, drop i, drop j
///   p3: pickup i, pickup j, drop j, drop i
enum class ServicePath : std::uint8_t { p1, p2, p3 };

struct PairCost {
  RequestId i = 0;
  RequestId j = 0;
  Seconds cost = 0;
  ServicePath best_path = ServicePath::p1;
};

/// Cheapest shared outbound service of i and j, starting at i's pickup.
/// Not symmetric in general.
[[nodiscard]] PairCost pair_cost(const RequestPair& i, const RequestPair& j, const TravelMatrix& t);

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n);

  std::size_t find(std::size_t x);
  /// Merges the sets of a and b; returns the new root, or the common root if
  /// they were already joined.
  std::size_t unite(std::size_t a, std::size_t b);
  [[nodiscard]] std::size_t set_size(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
  std::vector<std::size_t> size_;
};

struct MiniCluster {
  std::vector<RequestId> members;  // ascending

  friend bool operator==(const MiniCluster&, const MiniCluster&) = default;
};

/// Greedy union-find grouping of outbound rides. An arc (i, j) is profitable
/// when pair_cost(i, j) <= rho * (direct_i + direct_j); profitable arcs are
/// scanned by increasing cost (ties by the smaller then larger request id,
/// then direction) and join their sets while the union holds at most q_cap
/// rides. Clusters are returned ordered by their smallest member.
[[nodiscard]] std::vector<MiniCluster> build_miniclusters(const std::vector<RequestPair>& requests,
                                                          const TravelMatrix& t, int q_cap,
                                                          double rho);

/// Lines "cluster_id: req_ids...".
void dump_clusters(std::ostream& os, const std::vector<MiniCluster>& clusters);

}  // namespace darpcf
