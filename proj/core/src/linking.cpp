#include "darpcf/linking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace darpcf {

LinkingGraph build_linking_graph(const std::vector<RoutedCluster>& clusters, const TravelMatrix& t,
                                 NodeId depot) {
  LinkingGraph g;
  g.size = clusters.size();
  g.arc.assign(g.size * g.size, 0);
  for (std::size_t i = 0; i < g.size; ++i) {
    const auto& ri = clusters[i].route;
    g.duration.push_back(route_duration(ri));
    g.from_depot.push_back(t(depot, ri.first_node()));
    g.to_depot.push_back(t(ri.last_node(), depot));
    for (std::size_t j = 0; j < g.size; ++j) {
      if (i != j) g.arc[i * g.size + j] = t(ri.last_node(), clusters[j].route.first_node());
    }
  }
  return g;
}

Seconds path_cost(const LinkingGraph& g, const GiantTour& tour) {
  Seconds total = 0;
  for (std::size_t k = 0; k + 1 < tour.size(); ++k) total += g.cost(tour[k], tour[k + 1]);
  return total;
}

namespace {

GiantTour nearest_neighbour(const LinkingGraph& g, std::size_t start) {
  GiantTour tour{start};
  std::vector<bool> used(g.size, false);
  used[start] = true;
  for (std::size_t step = 1; step < g.size; ++step) {
    const std::size_t cur = tour.back();
    std::size_t pick = g.size;
    for (std::size_t j = 0; j < g.size; ++j) {
      if (!used[j] && (pick == g.size || g.cost(cur, j) < g.cost(cur, pick))) pick = j;
    }
    used[pick] = true;
    tour.push_back(pick);
  }
  return tour;
}

// Moves single clusters to a cheaper place in the path until no such move
// helps. Orientation is kept, so this is valid for asymmetric costs.
Seconds relocate(const LinkingGraph& g, GiantTour& tour) {
  const std::size_t n = tour.size();
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t x = tour[i];
      Seconds removal = 0;
      if (i > 0) removal -= g.cost(tour[i - 1], x);
      if (i + 1 < n) removal -= g.cost(x, tour[i + 1]);
      if (i > 0 && i + 1 < n) removal += g.cost(tour[i - 1], tour[i + 1]);
      Seconds best_gain = 0;
      std::size_t best_gap = n + 1;
      // Gap j sits before tour[j] in the current path.
      for (std::size_t j = 0; j <= n; ++j) {
        if (j == i || j == i + 1) continue;
        Seconds add = 0;
        if (j > 0) add += g.cost(tour[j - 1], x);
        if (j < n) add += g.cost(x, tour[j]);
        if (j > 0 && j < n) add -= g.cost(tour[j - 1], tour[j]);
        if (removal + add < best_gain) {
          best_gain = removal + add;
          best_gap = j;
        }
      }
      if (best_gap > n) continue;
      tour.erase(tour.begin() + static_cast<std::ptrdiff_t>(i));
      const std::size_t at = best_gap > i ? best_gap - 1 : best_gap;
      tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(at), x);
      improved = true;
    }
  }
  return path_cost(g, tour);
}

}  // namespace

GiantTour solve_atsp(const LinkingGraph& g, std::uint64_t seed, const AcoParams& params) {
  const std::size_t n = g.size;
  if (n <= 1) {
    GiantTour t(n);
    std::iota(t.begin(), t.end(), std::size_t{0});
    return t;
  }

  GiantTour best = nearest_neighbour(g, 0);
  Seconds best_cost = path_cost(g, best);
  for (std::size_t s = 1; s < n; ++s) {
    auto tour = nearest_neighbour(g, s);
    const Seconds c = path_cost(g, tour);
    if (c < best_cost) {
      best_cost = c;
      best = std::move(tour);
    }
  }
  best_cost = relocate(g, best);
  if (params.iterations <= 0) return best;

  std::vector<double> heuristic(n * n, 0.0);
  std::vector<std::vector<std::size_t>> near(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      heuristic[i * n + j] = std::pow(1.0 / (1.0 + static_cast<double>(g.cost(i, j))), params.beta);
      near[i].push_back(j);
    }
    const std::size_t keep = std::min(params.candidates, near[i].size());
    std::partial_sort(near[i].begin(), near[i].begin() + static_cast<std::ptrdiff_t>(keep),
                      near[i].end(), [&](std::size_t a, std::size_t b) {
                        return std::pair(g.cost(i, a), a) < std::pair(g.cost(i, b), b);
                      });
    near[i].resize(keep);
  }

  const double tau0 = 1.0 / (static_cast<double>(n) * (1.0 + static_cast<double>(best_cost)));
  std::vector<double> tau(n * n, tau0);
  auto attraction = [&](std::size_t i, std::size_t j) {
    const double tv = params.alpha == 1.0 ? tau[i * n + j] : std::pow(tau[i * n + j], params.alpha);
    return tv * heuristic[i * n + j];
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> start_pick(0, n - 1);
  constexpr double kElitistWeight = 5.0;

  std::vector<GiantTour> paths(n);
  std::vector<Seconds> costs(n);
  std::vector<bool> used(n);
  std::vector<double> weight;
  for (int iter = 0; iter < params.iterations; ++iter) {
    for (std::size_t ant = 0; ant < n; ++ant) {
      auto& path = paths[ant];
      path.clear();
      std::fill(used.begin(), used.end(), false);
      std::size_t cur = start_pick(rng);
      path.push_back(cur);
      used[cur] = true;
      while (path.size() < n) {
        double sum = 0.0;
        weight.assign(near[cur].size(), 0.0);
        for (std::size_t c = 0; c < near[cur].size(); ++c) {
          const std::size_t j = near[cur][c];
          if (!used[j]) {
            weight[c] = attraction(cur, j);
            sum += weight[c];
          }
        }
        std::size_t next = n;
        if (sum > 0.0) {
          double r = unit(rng) * sum;
          for (std::size_t c = 0; c < near[cur].size(); ++c) {
            if (weight[c] <= 0.0) continue;
            next = near[cur][c];
            r -= weight[c];
            if (r <= 0.0) break;
          }
        } else {
          double top = -1.0;
          for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double a = attraction(cur, j);
            if (a > top) {
              top = a;
              next = j;
            }
          }
        }
        used[next] = true;
        path.push_back(next);
        cur = next;
      }
      costs[ant] = path_cost(g, path);
    }
    const auto leader = static_cast<std::size_t>(
        std::min_element(costs.begin(), costs.end()) - costs.begin());
    GiantTour polished = paths[leader];
    const Seconds polished_cost = relocate(g, polished);
    if (polished_cost < best_cost) {
      best_cost = polished_cost;
      best = std::move(polished);
    }
    for (auto& x : tau) x *= 1.0 - params.evaporation;
    for (std::size_t ant = 0; ant < n; ++ant) {
      const double amount = 1.0 / (1.0 + static_cast<double>(costs[ant]));
      for (std::size_t k = 0; k + 1 < n; ++k) tau[paths[ant][k] * n + paths[ant][k + 1]] += amount;
    }
    const double elite = kElitistWeight / (1.0 + static_cast<double>(best_cost));
    for (std::size_t k = 0; k + 1 < n; ++k) tau[best[k] * n + best[k + 1]] += elite;
  }
  return best;
}

SplitData make_split_data(const LinkingGraph& g, const GiantTour& tour, Seconds max_route) {
  SplitData d;
  d.max_route = max_route;
  for (std::size_t k = 0; k < tour.size(); ++k) {
    d.duration.push_back(g.duration[tour[k]]);
    d.from_depot.push_back(g.from_depot[tour[k]]);
    d.to_depot.push_back(g.to_depot[tour[k]]);
    if (k + 1 < tour.size()) d.link.push_back(g.cost(tour[k], tour[k + 1]));
  }
  return d;
}

Seconds split_route_duration(const SplitData& d, std::size_t first, std::size_t last) {
  Seconds total = d.from_depot[first] + d.to_depot[last - 1];
  for (std::size_t k = first; k < last; ++k) {
    total += d.duration[k];
    if (k + 1 < last) total += d.link[k];
  }
  return total;
}

SplitResult split_tour(const SplitData& d, int vehicles) {
  const std::size_t n = d.duration.size();
  SplitResult result;
  if (n == 0 || vehicles <= 0) return result;
  const auto m = static_cast<std::size_t>(vehicles);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // cost[k][j]: best objective covering positions [0, j) with exactly k routes.
  std::vector<std::vector<double>> cost(m + 1, std::vector<double>(n + 1, kInf));
  std::vector<std::vector<std::size_t>> from(m + 1, std::vector<std::size_t>(n + 1, 0));
  cost[0][0] = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (cost[k - 1][i] == kInf) continue;
      Seconds inner = 0;  // cluster durations and links of [i, j)
      for (std::size_t j = i + 1; j <= n; ++j) {
        inner += d.duration[j - 1];
        if (j - 1 > i) inner += d.link[j - 2];
        const Seconds plain = d.from_depot[i] + inner + d.to_depot[j - 1];
        if (plain > d.max_route) continue;
        if (d.feasible && !d.feasible(i, j)) continue;
        const double w = static_cast<double>(inner) +
                         d.depot_multiplier * static_cast<double>(d.from_depot[i] + d.to_depot[j - 1]);
        const double c = cost[k - 1][i] + w;
        if (c < cost[k][j]) {
          cost[k][j] = c;
          from[k][j] = i;
        }
      }
    }
  }

  std::size_t end = 0;
  std::size_t layers = 0;
  double best = 0.0;
  for (std::size_t j = n; j > 0 && layers == 0; --j) {
    for (std::size_t k = 1; k <= m; ++k) {
      if (cost[k][j] < kInf && (layers == 0 || cost[k][j] < best)) {
        best = cost[k][j];
        layers = k;
        end = j;
      }
    }
  }
  result.covered = end;
  result.total = layers ? best : 0.0;
  for (std::size_t k = layers, j = end; k > 0; --k) {
    const std::size_t i = from[k][j];
    result.routes.emplace_back(i, j);
    j = i;
  }
  std::reverse(result.routes.begin(), result.routes.end());
  return result;
}

}  // namespace darpcf
