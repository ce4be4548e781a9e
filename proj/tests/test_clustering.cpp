#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "darpcf/clustering.hpp"
#include "support/toys.hpp"

namespace darpcf {
namespace {

using testing::kMinute;

std::vector<RequestPair> line_requests(const std::vector<std::pair<double, double>>& rides,
                                       TravelMatrix& t, double ride_factor = 1.5) {
  // Node 0 is a depot at x=0; each ride adds its home and GP.
  std::vector<double> xs{0};
  for (const auto& [home, gp] : rides) {
    xs.push_back(home);
    xs.push_back(gp);
  }
  t = testing::line_matrix(xs);
  auto service = testing::toy_service();
  service.ride_factor = ride_factor;
  std::vector<RequestPair> out;
  for (std::size_t i = 0; i < rides.size(); ++i) {
    const auto home = static_cast<NodeId>(1 + 2 * i);
    out.push_back(make_request(static_cast<RequestId>(i), PatientClass::chronic, home, home + 1, 7200,
                               0, t, service));
  }
  return out;
}

TEST(PairCost, CollinearToyPrefersNestedOrder) {
  // Orders cost 27, 11 and 10 minutes; the nested one wins.
  const auto inst = testing::collinear_toy();
  const auto c = pair_cost(inst.requests[0], inst.requests[1], inst.travel);
  EXPECT_EQ(c.cost, 10 * kMinute);
  EXPECT_EQ(c.best_path, ServicePath::p3);
}

TEST(PairCost, IgnoresRideLimits) {
  // Ride limits are checked later, when the cluster is routed.
  auto inst = testing::collinear_toy();
  for (auto& r : inst.requests) r.max_ride_outbound = 0;
  EXPECT_EQ(pair_cost(inst.requests[0], inst.requests[1], inst.travel).cost, 10 * kMinute);
}

TEST(PairCost, NotSymmetric) {
  const auto inst = testing::collinear_toy();
  const auto ab = pair_cost(inst.requests[0], inst.requests[1], inst.travel);
  const auto ba = pair_cost(inst.requests[1], inst.requests[0], inst.travel);
  EXPECT_EQ(ab.cost, 10 * kMinute);
  // Starting at B the best order is 1 -> 0 -> 9 -> 10.
  EXPECT_EQ(ba.cost, 11 * kMinute);
  EXPECT_EQ(ba.best_path, ServicePath::p2);
}

TEST(Clusters, CollinearToyIsOneCluster) {
  const auto inst = testing::collinear_toy();
  const auto clusters = build_miniclusters(inst.requests, inst.travel, 4, 1.0);
  ASSERT_EQ(clusters.size(), 1U);
  EXPECT_EQ(clusters[0].members, (std::vector<RequestId>{0, 1}));
}

TEST(Clusters, FarApartRidesStaySingletons) {
  TravelMatrix t;
  const auto reqs = line_requests({{0, 10}, {50, 60}}, t);
  const auto clusters = build_miniclusters(reqs, t, 4, 1.5);
  ASSERT_EQ(clusters.size(), 2U);
  EXPECT_EQ(clusters[0].members, (std::vector<RequestId>{0}));
  EXPECT_EQ(clusters[1].members, (std::vector<RequestId>{1}));
}

TEST(Clusters, CapacityCapsClusterSize) {
  TravelMatrix t;
  const auto reqs = line_requests({{0, 10}, {1, 9}, {2, 8}}, t);
  const auto all = build_miniclusters(reqs, t, 3, 1.0);
  ASSERT_EQ(all.size(), 1U);
  const auto capped = build_miniclusters(reqs, t, 2, 1.0);
  ASSERT_EQ(capped.size(), 2U);
  std::vector<std::size_t> sizes{capped[0].members.size(), capped[1].members.size()};
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2}));
}

TEST(Clusters, ZeroRhoMeansNoSharing) {
  const auto inst = testing::collinear_toy();
  EXPECT_EQ(build_miniclusters(inst.requests, inst.travel, 4, 0.0).size(), 2U);
}

TEST(Clusters, PartitionAndRespectCapacityOnRandomInput) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 20; ++round) {
    const std::size_t n = 30;
    auto t = testing::random_metric(rng, 2 * n + 1);
    std::vector<RequestPair> reqs;
    for (std::size_t i = 0; i < n; ++i) {
      const auto home = static_cast<NodeId>(1 + 2 * i);
      reqs.push_back(make_request(static_cast<RequestId>(i), PatientClass::chronic, home, home + 1,
                                  7200, 0, t, testing::toy_service()));
    }
    const int q = 1 + round % 4;
    const auto clusters = build_miniclusters(reqs, t, q, 1.5);
    std::vector<int> seen(n, 0);
    RequestId previous_first = -1;
    for (const auto& c : clusters) {
      ASSERT_FALSE(c.members.empty());
      EXPECT_LE(c.members.size(), static_cast<std::size_t>(q));
      EXPECT_TRUE(std::is_sorted(c.members.begin(), c.members.end()));
      EXPECT_GT(c.members.front(), previous_first);
      previous_first = c.members.front();
      for (auto r : c.members) ++seen[static_cast<std::size_t>(r)];
    }
    EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
  }
}

TEST(Clusters, Dump) {
  std::ostringstream os;
  dump_clusters(os, {{{0, 2}}, {{1}}});
  EXPECT_EQ(os.str(), "0: 0 2\n1: 1\n");
}

TEST(DisjointSetTest, UniteAndSize) {
  DisjointSet d(5);
  d.unite(0, 1);
  d.unite(3, 4);
  d.unite(1, 4);
  EXPECT_EQ(d.find(0), d.find(3));
  EXPECT_EQ(d.set_size(4), 4U);
  EXPECT_EQ(d.set_size(2), 1U);
}

}  // namespace
}  // namespace darpcf
