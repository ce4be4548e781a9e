#include "darpcf/verify.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <sstream>

namespace darpcf {

namespace {

struct LegVisit {
  std::optional<std::size_t> pickup_vehicle;
  std::optional<std::size_t> delivery_vehicle;
  Seconds pickup_time = 0;
  Seconds delivery_time = 0;
  int pickups = 0;
  int deliveries = 0;
};

class Reporter {
 public:
  explicit Reporter(std::vector<std::string>& out) : out_(out) {}

  template <typename... Parts>
  void operator()(const Parts&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    out_.push_back(os.str());
  }

 private:
  std::vector<std::string>& out_;
};

}  // namespace

FeasibilityReport verify_schedules(const Instance& inst, const Schedules& schedules,
                                   const VerifyOptions& options) {
  FeasibilityReport report;
  Reporter add(report.violations);
  const auto& f = inst.fleet;
  const auto& svc = inst.service;
  const auto n_nodes = static_cast<NodeId>(inst.travel.size());
  const auto n_req = inst.requests.size();

  // visits[request][leg]
  std::vector<std::array<LegVisit, 2>> visits(n_req);
  std::vector<bool> seen_vehicle(static_cast<std::size_t>(std::max(f.vehicles, 0)), false);

  for (const auto& s : schedules) {
    const auto v = s.vehicle;
    if (v < 0 || v >= f.vehicles) {
      add("unknown vehicle ", v);
      continue;
    }
    if (seen_vehicle[static_cast<std::size_t>(v)]) {
      add("vehicle ", v, " has more than one schedule");
    }
    seen_vehicle[static_cast<std::size_t>(v)] = true;

    const auto& st = s.stops;
    if (st.size() < 2 || st.front().action != StopAction::depot ||
        st.back().action != StopAction::depot || st.front().node != f.depot ||
        st.back().node != f.depot) {
      add("vehicle ", v, ": route must start and end at the depot");
      continue;
    }
    if (st.front().planned_time < f.day_start) {
      add("vehicle ", v, ": leaves the depot before the service day");
    }
    if (st.back().planned_time - st.front().planned_time > f.max_route_duration) {
      add("vehicle ", v, ": route duration exceeds the maximum");
    }

    int load = 0;
    bool nodes_ok = true;
    for (std::size_t k = 0; k < st.size(); ++k) {
      const auto& stop = st[k];
      if (stop.node < 0 || stop.node >= n_nodes) {
        add("vehicle ", v, " stop ", k, ": unknown node ", stop.node);
        nodes_ok = false;
        continue;
      }
      if (k > 0 && nodes_ok &&
          stop.planned_time < st[k - 1].planned_time + inst.travel(st[k - 1].node, stop.node)) {
        add("vehicle ", v, " stop ", k, ": time inconsistent with travel from previous stop");
      }
      if (stop.action == StopAction::depot) {
        if (k != 0 && k + 1 != st.size()) {
          add("vehicle ", v, " stop ", k, ": depot stop inside the route");
        }
      } else {
        if (stop.request < 0 || static_cast<std::size_t>(stop.request) >= n_req) {
          add("vehicle ", v, " stop ", k, ": unknown request ", stop.request);
          continue;
        }
        const auto& r = inst.request(stop.request);
        const bool pickup = stop.action == StopAction::pickup;
        const NodeId expected = pickup ? r.pickup_node(stop.leg) : r.delivery_node(stop.leg);
        if (stop.node != expected) {
          add("vehicle ", v, " stop ", k, ": node ", stop.node, " does not match request ",
              r.id);
        }
        if (!r.chronic() && stop.planned_time < r.release_time) {
          add("vehicle ", v, " stop ", k, ": request ", r.id, " served before its release");
        }
        auto& visit = visits[static_cast<std::size_t>(stop.request)][static_cast<int>(stop.leg)];
        if (pickup) {
          ++visit.pickups;
          visit.pickup_vehicle = static_cast<std::size_t>(v);
          visit.pickup_time = stop.planned_time;
          ++load;
        } else {
          ++visit.deliveries;
          if (!visit.pickup_vehicle || *visit.pickup_vehicle != static_cast<std::size_t>(v) ||
              visit.deliveries > visit.pickups) {
            add("vehicle ", v, ": precedence violated at stop ", k);
          }
          visit.delivery_vehicle = static_cast<std::size_t>(v);
          visit.delivery_time = stop.planned_time;
          --load;
        }
      }
      if (load < 0 || load > f.capacity) {
        add("vehicle ", v, " stop ", k, ": load ", load, " outside [0, ", f.capacity, "]");
      }
      if (stop.load_after != load) {
        add("vehicle ", v, " stop ", k, ": recorded load ", stop.load_after, " differs from ",
            load);
      }
    }
    if (load != 0) {
      add("vehicle ", v, ": returns to the depot with passengers on board");
    }
  }

  std::map<NodeId, std::vector<Seconds>> arrivals;
  for (std::size_t i = 0; i < n_req; ++i) {
    const auto& r = inst.requests[i];
    const auto& out = visits[i][0];
    const auto& in = visits[i][1];
    for (int leg = 0; leg < 2; ++leg) {
      const auto& vis = visits[i][static_cast<std::size_t>(leg)];
      if (vis.pickups > 1 || vis.deliveries > 1) {
        add("request ", r.id, " ", to_string(static_cast<Leg>(leg)), ": served more than once");
      }
      if (vis.pickups != vis.deliveries) {
        add("request ", r.id, " ", to_string(static_cast<Leg>(leg)),
            ": precedence violated (pickup without delivery)");
      }
    }
    const bool out_served = out.deliveries == 1 && out.pickups == 1;
    const bool in_served = in.deliveries == 1 && in.pickups == 1;
    if (out_served != in_served) {
      add("request ", r.id, ": pair served partially");
    }
    if (out_served) {
      if (out.delivery_time - out.pickup_time > r.max_ride_outbound) {
        add("request ", r.id, " out: ride time exceeds maximum");
      }
      arrivals[r.gp].push_back(out.delivery_time);
    }
    if (in_served && in.delivery_time - in.pickup_time > r.max_ride_inbound) {
      add("request ", r.id, " in: ride time exceeds maximum");
    }
    if (!(out_served && in_served)) {
      continue;
    }
    if (r.chronic() && !options.fixed_chronic_appointments) {
      if (!inside_any(f.sessions, out.delivery_time)) {
        add("request ", r.id, ": appointment outside opening hours");
      }
      if (!coupling_window(out.delivery_time, svc).contains(in.pickup_time)) {
        add("request ", r.id, ": coupling window violated");
      }
    } else {
      const TimeWindow arrive = r.outbound_window.value_or(fixed_arrival_window(r.appointment, svc));
      const TimeWindow depart = r.inbound_window.value_or(fixed_departure_window(r.appointment, svc));
      if (!arrive.contains(out.delivery_time)) {
        add("request ", r.id, ": arrival window violated");
      }
      if (!depart.contains(in.pickup_time)) {
        add("request ", r.id, ": departure window violated");
      }
    }
  }

  for (auto& [gp, times] : arrivals) {
    std::sort(times.begin(), times.end());
    std::size_t lo = 0;
    for (std::size_t hi = 0; hi < times.size(); ++hi) {
      while (times[hi] - times[lo] >= svc.congestion_window) {
        ++lo;
      }
      if (static_cast<int>(hi - lo + 1) > svc.congestion_limit) {
        add("congestion at gp ", gp, " around time ", times[hi]);
        break;
      }
    }
  }
  return report;
}

std::vector<bool> served_requests(const Instance& inst, const Schedules& schedules) {
  std::vector<int> delivered(inst.requests.size(), 0);
  for (const auto& s : schedules) {
    for (const auto& st : s.stops) {
      if (st.action == StopAction::delivery && st.request >= 0 &&
          static_cast<std::size_t>(st.request) < delivered.size()) {
        delivered[static_cast<std::size_t>(st.request)] |= st.leg == Leg::outbound ? 1 : 2;
      }
    }
  }
  std::vector<bool> out(delivered.size());
  for (std::size_t i = 0; i < delivered.size(); ++i) {
    out[i] = delivered[i] == 3;
  }
  return out;
}

ServedStats served_count(const Instance& inst, const Schedules& schedules) {
  ServedStats stats;
  for (const auto& s : schedules) {
    stats.total_drive_time += drive_time(s, inst.travel);
    for (const auto& st : s.stops) {
      if (st.action == StopAction::delivery) {
        ++stats.served_rides;
      }
    }
  }
  const auto served = served_requests(inst, schedules);
  stats.served_pairs = static_cast<int>(std::count(served.begin(), served.end(), true));
  return stats;
}

}  // namespace darpcf
