#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "darpcf/linking.hpp"
#include "support/oracles.hpp"
#include "support/toys.hpp"

namespace darpcf {
namespace {

using testing::kMinute;

// Three single-patient clusters on a line. Homes and GPs (in minutes):
// 1 -> 5, 6 -> 2, 3 -> 8; the depot is at 0.
Instance three_rides() {
  Instance inst;
  inst.travel = testing::line_matrix({0, 1, 5, 6, 2, 3, 8});
  inst.service = testing::toy_service();
  for (RequestId i = 0; i < 3; ++i) {
    inst.requests.push_back(make_request(i, PatientClass::chronic, 1 + 2 * i, 2 + 2 * i, 7200, 0,
                                         inst.travel, inst.service));
  }
  return inst;
}

LinkingGraph three_graph() {
  const auto inst = three_rides();
  return build_linking_graph(route_clusters(inst, {{{0}}, {{1}}, {{2}}}), inst.travel, 0);
}

TEST(LinkingGraphTest, ArcCosts) {
  const auto g = three_graph();
  ASSERT_EQ(g.size, 3U);
  const std::vector<Seconds> arcs{0, 1, 2, 1, 0, 1, 7, 2, 0};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) EXPECT_EQ(g.cost(i, j), arcs[i * 3 + j] * kMinute) << i << "->" << j;
    }
  }
  EXPECT_EQ(g.duration, (std::vector<Seconds>{240, 240, 300}));
  EXPECT_EQ(g.from_depot, (std::vector<Seconds>{60, 360, 180}));
  EXPECT_EQ(g.to_depot, (std::vector<Seconds>{300, 120, 480}));
}

TEST(Atsp, ThreeVerticesMatchBruteForce) {
  const auto g = three_graph();
  GiantTour perm{0, 1, 2};
  Seconds best = path_cost(g, perm);
  while (std::next_permutation(perm.begin(), perm.end())) best = std::min(best, path_cost(g, perm));
  const auto tour = solve_atsp(g, 1);
  EXPECT_EQ(path_cost(g, tour), best);
  EXPECT_EQ(tour, (GiantTour{0, 1, 2}));
}

LinkingGraph random_graph(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<Seconds> c(1, 1000);
  LinkingGraph g;
  g.size = n;
  g.arc.assign(n * n, 0);
  for (auto& a : g.arc) a = c(rng);
  g.duration.assign(n, 100);
  g.from_depot.assign(n, 50);
  g.to_depot.assign(n, 50);
  return g;
}

TEST(Atsp, ProducesPermutationAndIsDeterministic) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {1U, 2U, 7U, 40U}) {
    const auto g = random_graph(rng, n);
    const auto a = solve_atsp(g, 9);
    const auto b = solve_atsp(g, 9);
    EXPECT_EQ(a, b);
    auto sorted = a;
    std::sort(sorted.begin(), sorted.end());
    GiantTour ids(n);
    std::iota(ids.begin(), ids.end(), 0U);
    EXPECT_EQ(sorted, ids);
  }
}

TEST(Atsp, SmallGraphsReachOptimum) {
  std::mt19937_64 rng(4);
  for (int round = 0; round < 10; ++round) {
    const auto g = random_graph(rng, 6);
    GiantTour perm{0, 1, 2, 3, 4, 5};
    Seconds best = path_cost(g, perm);
    while (std::next_permutation(perm.begin(), perm.end())) best = std::min(best, path_cost(g, perm));
    EXPECT_EQ(path_cost(g, solve_atsp(g, 1)), best) << "round " << round;
  }
}

SplitData even_split() {
  SplitData d;
  d.duration = {10, 10, 10};
  d.link = {1, 1};
  d.from_depot = {5, 5, 5};
  d.to_depot = {5, 5, 5};
  d.max_route = 40;
  return d;
}

TEST(Split, RouteDuration) {
  const auto d = even_split();
  EXPECT_EQ(split_route_duration(d, 0, 1), 20);
  EXPECT_EQ(split_route_duration(d, 0, 2), 31);
  EXPECT_EQ(split_route_duration(d, 0, 3), 42);
}

TEST(Split, TwoVehiclesCoverAll) {
  const auto r = split_tour(even_split(), 2);
  EXPECT_TRUE(r.complete(3));
  EXPECT_EQ(r.routes.size(), 2U);
  EXPECT_DOUBLE_EQ(r.total, 51.0);
}

TEST(Split, OneVehicleCoversLongestPrefix) {
  const auto r = split_tour(even_split(), 1);
  EXPECT_EQ(r.covered, 2U);
  ASSERT_EQ(r.routes.size(), 1U);
  EXPECT_EQ(r.routes[0], (std::pair<std::size_t, std::size_t>{0, 2}));
  EXPECT_DOUBLE_EQ(r.total, 31.0);
}

TEST(Split, DepotMultiplierFavoursFewerRoutes) {
  auto d = even_split();
  d.max_route = 100;
  d.depot_multiplier = 3.0;
  const auto r = split_tour(d, 3);
  EXPECT_EQ(r.routes.size(), 1U);
  EXPECT_DOUBLE_EQ(r.total, 32.0 + 30.0);
}

TEST(Split, FeasibilityHookForbidsRoutes) {
  auto d = even_split();
  d.max_route = 100;
  d.feasible = [](std::size_t first, std::size_t last) { return last - first == 1; };
  const auto r = split_tour(d, 3);
  EXPECT_EQ(r.routes.size(), 3U);
  EXPECT_TRUE(r.complete(3));
}

TEST(Split, MatchesOracleOnRandomData) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Seconds> dur(10, 120);
  std::uniform_int_distribution<Seconds> leg(1, 60);
  std::uniform_int_distribution<int> fleet(1, 4);
  for (int round = 0; round < 40; ++round) {
    SplitData d;
    const std::size_t n = 1 + static_cast<std::size_t>(round % 9);
    for (std::size_t i = 0; i < n; ++i) {
      d.duration.push_back(dur(rng));
      d.from_depot.push_back(leg(rng));
      d.to_depot.push_back(leg(rng));
      if (i + 1 < n) d.link.push_back(leg(rng));
    }
    d.max_route = 150 + 40 * (round % 5);
    d.depot_multiplier = 1.0 + 0.5 * (round % 3);
    const int vehicles = fleet(rng);
    const auto oracle = testing::brute_split(d, vehicles);
    const auto r = split_tour(d, vehicles);
    EXPECT_EQ(r.covered, oracle.covered) << "round " << round;
    EXPECT_NEAR(r.total, oracle.total, 1e-9) << "round " << round;
  }
}

}  // namespace
}  // namespace darpcf
