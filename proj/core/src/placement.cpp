#include "darpcf/placement.hpp"

namespace darpcf {

namespace {
constexpr Seconds kCongestionStep = 60;
}

std::optional<PlacedCluster> place_cluster(const Instance& inst, const RoutedCluster& cluster,
                                           Seconds earliest, const ArrivalIndex* arrivals,
                                           bool allow_shift) {
  const auto& sessions = inst.fleet.sessions;
  const auto& svc = inst.service;
  const auto& route = cluster.route.stops;
  std::vector<ArrivalIndex::Change> changes;

  Seconds start = earliest;
  while (start <= inst.fleet.day_end()) {
    bool moved = false;
    for (const auto& rs : route) {
      if (rs.action != StopAction::delivery) continue;
      const Seconds at = start + rs.time;
      if (inside_any(sessions, at)) continue;
      const Seconds open = earliest_in(sessions, at);
      if (!allow_shift || open == kNever) return std::nullopt;
      start += open - at;
      moved = true;
      break;
    }
    if (moved) continue;

    if (arrivals) {
      changes.clear();
      for (const auto& rs : route) {
        if (rs.action == StopAction::delivery) changes.push_back({rs.node, std::nullopt, start + rs.time});
      }
      if (!arrivals->admits(changes, svc.congestion_limit, svc.congestion_window)) {
        if (!allow_shift) return std::nullopt;
        start += kCongestionStep;
        continue;
      }
    }

    PlacedCluster placed;
    placed.start = start;
    for (const auto& rs : route) {
      Stop st;
      st.node = rs.node;
      st.action = rs.action;
      st.request = rs.request;
      st.leg = Leg::outbound;
      st.planned_time = start + rs.time;
      st.window = {st.planned_time, st.planned_time};
      if (rs.action == StopAction::delivery) st.max_ride = inst.request(rs.request).max_ride_outbound;
      placed.stops.push_back(st);
    }
    return placed;
  }
  return std::nullopt;
}

Seconds earliest_cluster_start(const Instance& inst, const Schedule& s,
                               const RoutedCluster& cluster, Seconds not_before) {
  const Stop& last = s.stops[s.end_index() - 1];
  return std::max(last.planned_time, not_before) +
         inst.travel(last.node, cluster.route.first_node());
}

bool append_cluster(RoutingState& state, VehicleId v, const PlacedCluster& placed) {
  const auto& inst = state.instance();
  Schedule s = state.schedule(v);
  const Seconds back = placed.finish() + inst.travel(placed.stops.back().node, inst.fleet.depot);
  if (back > s.stops.back().window.latest) return false;
  s.stops.insert(s.stops.end() - 1, placed.stops.begin(), placed.stops.end());
  s.stops.back().planned_time = back;
  recompute_loads(s);
  state.replace(v, std::move(s));
  return true;
}

}  // namespace darpcf
