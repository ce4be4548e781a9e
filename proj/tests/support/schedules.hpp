#pragma once

#include <vector>

#include "darpcf/schedule.hpp"

namespace darpcf::testing {

inline Stop depot_stop(NodeId node, Seconds time) {
  Stop s;
  s.node = node;
  s.planned_time = time;
  return s;
}

inline Stop ride_stop(NodeId node, StopAction action, RequestId r, Leg leg, Seconds time) {
  Stop s;
  s.node = node;
  s.action = action;
  s.request = r;
  s.leg = leg;
  s.planned_time = time;
  return s;
}

/// Depot, the given stops, depot; loads are filled in.
inline Schedule hand_schedule(VehicleId v, NodeId depot, Seconds start, std::vector<Stop> stops,
                              Seconds end) {
  Schedule s;
  s.vehicle = v;
  s.stops.push_back(depot_stop(depot, start));
  for (auto& st : stops) s.stops.push_back(st);
  s.stops.push_back(depot_stop(depot, end));
  recompute_loads(s);
  s.fixed_prefix_len = 1;
  return s;
}

}  // namespace darpcf::testing
