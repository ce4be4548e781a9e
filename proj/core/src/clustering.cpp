#include "darpcf/clustering.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <tuple>

namespace darpcf {

PairCost pair_cost(const RequestPair& i, const RequestPair& j, const TravelMatrix& t) {
  const NodeId pi = i.home;
  const NodeId di = i.gp;
  const NodeId pj = j.home;
  const NodeId dj = j.gp;
  const Seconds p1 = t(pi, di) + t(di, pj) + t(pj, dj);
  const Seconds p2 = t(pi, pj) + t(pj, di) + t(di, dj);
  const Seconds p3 = t(pi, pj) + t(pj, dj) + t(dj, di);
  PairCost c{i.id, j.id, p1, ServicePath::p1};
  if (p2 < c.cost) c = {i.id, j.id, p2, ServicePath::p2};
  if (p3 < c.cost) c = {i.id, j.id, p3, ServicePath::p3};
  return c;
}

DisjointSet::DisjointSet(std::size_t n) : parent_(n), rank_(n, 0), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSet::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

std::size_t DisjointSet::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return a;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  if (rank_[a] == rank_[b]) ++rank_[a];
  return a;
}

std::vector<MiniCluster> build_miniclusters(const std::vector<RequestPair>& requests,
                                            const TravelMatrix& t, int q_cap, double rho) {
  const std::size_t n = requests.size();
  struct Edge {
    Seconds cost;
    RequestId lo;
    RequestId hi;
    std::size_t a;
    std::size_t b;
  };
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < n; ++a) {
    const Seconds da = t(requests[a].home, requests[a].gp);
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const Seconds db = t(requests[b].home, requests[b].gp);
      const auto c = pair_cost(requests[a], requests[b], t);
      if (static_cast<double>(c.cost) <= rho * static_cast<double>(da + db)) {
        edges.push_back({c.cost, std::min(requests[a].id, requests[b].id),
                         std::max(requests[a].id, requests[b].id), a, b});
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [&](const Edge& x, const Edge& y) {
    return std::tie(x.cost, x.lo, x.hi, requests[x.a].id) <
           std::tie(y.cost, y.lo, y.hi, requests[y.a].id);
  });

  DisjointSet sets(n);
  for (const auto& e : edges) {
    if (sets.find(e.a) == sets.find(e.b)) continue;
    if (sets.set_size(e.a) + sets.set_size(e.b) > static_cast<std::size_t>(q_cap)) continue;
    sets.unite(e.a, e.b);
  }

  std::map<std::size_t, MiniCluster> by_root;
  for (std::size_t a = 0; a < n; ++a) {
    by_root[sets.find(a)].members.push_back(requests[a].id);
  }
  std::vector<MiniCluster> out;
  out.reserve(by_root.size());
  for (auto& [root, cluster] : by_root) {
    std::sort(cluster.members.begin(), cluster.members.end());
    out.push_back(std::move(cluster));
  }
  std::sort(out.begin(), out.end(), [](const MiniCluster& x, const MiniCluster& y) {
    return x.members.front() < y.members.front();
  });
  return out;
}

void dump_clusters(std::ostream& os, const std::vector<MiniCluster>& clusters) {
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    os << c << ":";
    for (auto id : clusters[c].members) os << ' ' << id;
    os << '\n';
  }
}

}  // namespace darpcf
