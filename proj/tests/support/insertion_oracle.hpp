#pragma once

// Exhaustive reference for single-ride insertion: every (vehicle, pickup
// position, delivery position) is simulated from scratch and checked
// against all constraints. Slow and simple on purpose.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "darpcf/insertion.hpp"

namespace darpcf::testing {

struct OracleInsertion {
  VehicleId vehicle = 0;
  std::size_t pickup_pos = 0;
  std::size_t delivery_pos = 0;
  Seconds delta_cost = 0;
  Seconds pickup_time = 0;
  Seconds delivery_time = 0;

  friend bool operator==(const OracleInsertion&, const OracleInsertion&) = default;
  friend auto operator<=>(const OracleInsertion& a, const OracleInsertion& b) {
    return std::tie(a.delta_cost, a.vehicle, a.pickup_pos, a.delivery_pos) <=>
           std::tie(b.delta_cost, b.vehicle, b.pickup_pos, b.delivery_pos);
  }
};

inline OracleInsertion as_oracle(const InsertionCandidate& c) {
  return {c.vehicle, c.pickup_pos, c.delivery_pos, c.delta_cost, c.pickup_time, c.delivery_time};
}

/// Smallest index a new stop may be placed before. Stops served before
/// `frozen` stay put, a leg already being driven is finished, a finished
/// tour stays finished, and the committed prefix stays closed when asked to.
inline std::size_t oracle_open_position(const Schedule& s, const TravelMatrix& t, Seconds frozen,
                                        bool respect_prefix) {
  const std::size_t end = s.stops.size() - 1;
  // Back at the depot after a tour: nothing more today.
  if (end > 1 && s.stops[end].planned_time < frozen) return end + 1;
  std::size_t pos = 1;
  for (std::size_t k = 1; k < end; ++k) {
    if (s.stops[k].planned_time < frozen) pos = k + 1;
  }
  if (pos < end) {
    const auto& prev = s.stops[pos - 1];
    const auto& next = s.stops[pos];
    const Seconds leaves = next.planned_time - t(prev.node, next.node);
    if (frozen > leaves) ++pos;
  }
  if (respect_prefix) pos = std::max(pos, std::min(s.fixed_prefix_len, end));
  return pos;
}

inline std::optional<Seconds> oracle_snap(const std::vector<TimeWindow>& sessions, Seconds at) {
  for (const auto& w : sessions) {
    if (at <= w.latest) return std::max(at, w.earliest);
  }
  return std::nullopt;
}

using ArrivalsByGp = std::map<NodeId, std::vector<Seconds>>;

inline void collect_arrivals(const Schedule& s, ArrivalsByGp& out) {
  for (const auto& st : s.stops) {
    if (st.action == StopAction::delivery && st.leg == Leg::outbound) {
      out[st.node].push_back(st.planned_time);
    }
  }
}

/// No window [a, a + W) at any GP holds more than the limit of arrivals.
inline bool oracle_congestion_ok(const Instance& inst, ArrivalsByGp by_gp) {
  for (auto& [gp, times] : by_gp) {
    std::sort(times.begin(), times.end());
    for (std::size_t i = 0; i < times.size(); ++i) {
      const auto hi = std::lower_bound(times.begin(), times.end(),
                                       times[i] + inst.service.congestion_window);
      if (hi - (times.begin() + static_cast<std::ptrdiff_t>(i)) > inst.service.congestion_limit) {
        return false;
      }
    }
  }
  return true;
}

inline Seconds oracle_drive(const Schedule& s, const TravelMatrix& t) {
  Seconds d = 0;
  for (std::size_t k = 1; k < s.stops.size(); ++k) d += t(s.stops[k - 1].node, s.stops[k].node);
  return d;
}

/// Every feasible insertion of `ride`, sorted like the library's candidates.
inline std::vector<OracleInsertion> brute_insertions(const Instance& inst, const Schedules& all,
                                                     const RideSpec& ride, Seconds frozen,
                                                     bool respect_prefix = true) {
  const auto& t = inst.travel;
  std::vector<OracleInsertion> out;
  for (const auto& s : all) {
    const std::size_t end = s.stops.size() - 1;
    const std::size_t open = oracle_open_position(s, t, frozen, respect_prefix);
    ArrivalsByGp others;
    for (const auto& o : all) {
      if (o.vehicle != s.vehicle) collect_arrivals(o, others);
    }
    for (std::size_t p = open; p <= end; ++p) {
      for (std::size_t q = p; q <= end; ++q) {
        Schedule n = s;
        Stop pick;
        pick.node = ride.pickup;
        pick.action = StopAction::pickup;
        pick.request = ride.request;
        pick.leg = ride.leg;
        Stop drop = pick;
        drop.node = ride.delivery;
        drop.action = StopAction::delivery;
        n.stops.insert(n.stops.begin() + static_cast<std::ptrdiff_t>(p), pick);
        n.stops.insert(n.stops.begin() + static_cast<std::ptrdiff_t>(q + 1), drop);
        const std::size_t pi = p;
        const std::size_t di = q + 1;

        bool ok = true;
        for (std::size_t k = pi; k < n.stops.size() && ok; ++k) {
          auto& st = n.stops[k];
          const auto& prev = n.stops[k - 1];
          Seconds ready = prev.planned_time + t(prev.node, st.node);
          if (k == pi) {
            ready = std::max(prev.planned_time, frozen) + t(prev.node, st.node);
            st.planned_time = std::max(ride.pickup_window.earliest, ready);
            ok = st.planned_time <= ride.pickup_window.latest;
          } else if (k == di) {
            Seconds at = std::max(ride.delivery_window.earliest, ready);
            if (ride.session_delivery) {
              const auto snapped = oracle_snap(inst.fleet.sessions, at);
              ok = snapped.has_value();
              at = snapped.value_or(at);
            }
            st.planned_time = at;
            ok = ok && at <= ride.delivery_window.latest;
          } else {
            st.planned_time = std::max(st.planned_time, ready);
            ok = st.planned_time <= st.window.latest;
          }
        }
        if (!ok) continue;

        // Ride times and loads over the whole route.
        int load = 0;
        for (std::size_t k = 0; k < n.stops.size() && ok; ++k) {
          const auto& st = n.stops[k];
          if (st.action == StopAction::pickup) ++load;
          if (st.action == StopAction::delivery) {
            --load;
            const Seconds limit = k == di ? ride.max_ride : st.max_ride;
            for (std::size_t j = 0; j < k; ++j) {
              const auto& sj = n.stops[j];
              if (sj.action == StopAction::pickup && sj.request == st.request && sj.leg == st.leg) {
                ok = st.planned_time - sj.planned_time <= limit;
              }
            }
          }
          ok = ok && load <= inst.fleet.capacity;
        }
        ok = ok && n.stops.back().planned_time - n.stops.front().planned_time <=
                       inst.fleet.max_route_duration;
        if (!ok) continue;

        auto arrivals = others;
        collect_arrivals(n, arrivals);
        if (!oracle_congestion_ok(inst, std::move(arrivals))) continue;

        out.push_back({s.vehicle, p, q, oracle_drive(n, t) - oracle_drive(s, t),
                       n.stops[pi].planned_time, n.stops[di].planned_time});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Small random walk-in instance for insertion tests: a depot, a few GPs
/// and one home per patient in a square, a single morning session.
inline Instance random_walk_in_instance(std::mt19937_64& rng, int patients, int gps, int vehicles,
                                        int capacity, int congestion_limit) {
  Instance inst;
  inst.name = "random-walk-ins";
  const auto nodes = static_cast<std::size_t>(1 + gps + patients);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  std::vector<std::pair<double, double>> p(nodes);
  for (auto& q : p) q = {u(rng), u(rng)};
  inst.travel = TravelMatrix(nodes);
  for (std::size_t a = 0; a < nodes; ++a) {
    inst.locations.push_back({static_cast<NodeId>(a), p[a].first, p[a].second});
    for (std::size_t b = 0; b < nodes; ++b) {
      if (a == b) continue;
      const double d = std::hypot(p[a].first - p[b].first, p[a].second - p[b].second);
      inst.travel(static_cast<NodeId>(a), static_cast<NodeId>(b)) =
          static_cast<Seconds>(std::ceil(d * 60.0));
    }
  }
  inst.service.gp_stay = 1800;
  inst.service.max_window = 1200;
  inst.service.ride_factor = 1.5;
  inst.service.congestion_limit = congestion_limit;
  inst.service.congestion_window = 1800;
  inst.fleet.vehicles = vehicles;
  inst.fleet.capacity = capacity;
  inst.fleet.sessions = {{3600, 3 * 3600}};
  inst.fleet.max_route_duration = 5 * 3600;
  std::uniform_int_distribution<int> gp(1, gps);
  std::uniform_int_distribution<int> slot(0, 24);
  for (int i = 0; i < patients; ++i) {
    const Seconds appointment = 3600 + 300 * slot(rng);
    const Seconds release = std::max<Seconds>(0, appointment - 5400);
    inst.requests.push_back(make_request(i, PatientClass::walk_in, static_cast<NodeId>(1 + gps + i),
                                         static_cast<NodeId>(gp(rng)), appointment, release,
                                         inst.travel, inst.service));
  }
  return inst;
}

}  // namespace darpcf::testing
