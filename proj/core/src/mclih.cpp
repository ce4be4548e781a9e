#include "darpcf/mclih.hpp"

#include <algorithm>

#include "darpcf/clustering.hpp"
#include "darpcf/placement.hpp"

namespace darpcf {

namespace {

/// Whether one vehicle can serve `order` within the day, leaving the depot at
/// day start, with appointments pushed into the sessions. Congestion is
/// ignored here.
bool fits_the_day(const Instance& inst, const std::vector<const RoutedCluster*>& order, Seconds gap) {
  const auto& t = inst.travel;
  NodeId at = inst.fleet.depot;
  Seconds time = inst.fleet.day_start;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Seconds earliest = time + (k > 0 ? gap : 0) + t(at, order[k]->route.first_node());
    const auto placed = place_cluster(inst, *order[k], earliest, nullptr);
    if (!placed) return false;
    time = placed->finish();
    at = order[k]->route.last_node();
  }
  return time + t(at, inst.fleet.depot) <= inst.fleet.day_end();
}

}  // namespace

SolveResult run_mclih(const Instance& inst, const MclihOptions& options) {
  RoutingState state(inst, make_empty_schedules(inst));
  SolveResult result;

  std::vector<RequestPair> chronic;
  for (const auto& r : inst.requests) {
    if (r.chronic()) chronic.push_back(r);
  }
  const auto clusters = route_clusters(
      inst, build_miniclusters(chronic, inst.travel, inst.fleet.capacity, inst.service.rho));

  // Link and split.
  std::vector<const RoutedCluster*> overflow;
  if (!clusters.empty()) {
    const auto graph = build_linking_graph(clusters, inst.travel, inst.fleet.depot);
    const auto tour = solve_atsp(graph, options.seed, options.aco);
    auto split = make_split_data(graph, tour, inst.fleet.max_route_duration);
    split.depot_multiplier = options.depot_multiplier;
    split.feasible = [&](std::size_t first, std::size_t last) {
      std::vector<const RoutedCluster*> order;
      for (std::size_t k = first; k < last; ++k) order.push_back(&clusters[tour[k]]);
      return fits_the_day(inst, order, options.cluster_gap);
    };
    const auto routes = split_tour(split, inst.fleet.vehicles);

    for (std::size_t v = 0; v < routes.routes.size(); ++v) {
      const auto vehicle = static_cast<VehicleId>(v);
      const auto [first, last] = routes.routes[v];
      bool any = false;
      for (std::size_t k = first; k < last; ++k) {
        const auto& c = clusters[tour[k]];
        const Seconds earliest =
            earliest_cluster_start(inst, state.schedule(vehicle), c) + (any ? options.cluster_gap : 0);
        const auto placed = place_cluster(inst, c, earliest, &state.arrivals());
        if (placed && append_cluster(state, vehicle, *placed)) {
          any = true;
        } else {
          overflow.push_back(&c);
        }
      }
    }
    for (std::size_t k = routes.covered; k < tour.size(); ++k) overflow.push_back(&clusters[tour[k]]);
  }

  // Appointments are now fixed: insert the return rides in arrival order.
  std::vector<std::pair<Seconds, RequestId>> arrivals;
  for (const auto& s : state.schedules()) {
    for (const auto& st : s.stops) {
      if (st.is_gp_arrival()) arrivals.emplace_back(st.planned_time, st.request);
    }
  }
  std::sort(arrivals.begin(), arrivals.end());
  PairOptions retry = pair_options(PairMode::coupled);
  retry.outbound_probes = options.retry_probes;
  retry.insert.respect_fixed_prefix = false;
  InsertOptions offline;
  offline.respect_fixed_prefix = false;
  for (const auto& [arrival, id] : arrivals) {
    const auto& r = inst.request(id);
    const auto ride = coupled_inbound(inst, r, arrival);
    if (auto c = state.best(ride, offline)) {
      state.apply(ride, *c);
      continue;
    }
    state.remove(id, Leg::outbound);
    if (!insert_pair(state, r, PairMode::coupled, retry)) result.rejected.push_back(id);
  }

  // Clusters the split could not place are served ride by ride.
  std::vector<RequestId> leftover;
  for (const auto* c : overflow) {
    for (auto id : c->cluster.members) leftover.push_back(id);
  }
  std::sort(leftover.begin(), leftover.end());
  for (auto id : leftover) {
    if (!insert_pair(state, inst.request(id), PairMode::coupled, retry)) result.rejected.push_back(id);
  }

  insert_walk_ins(state, result.rejected);
  result.schedules = std::move(state).release();
  normalize(result);
  return result;
}

}  // namespace darpcf
