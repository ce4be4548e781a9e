#include "darpcf/instance.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace darpcf {

Seconds earliest_in(const std::vector<TimeWindow>& windows, Seconds t) {
  for (const auto& w : windows) {
    if (t <= w.latest) {
      return std::max(t, w.earliest);
    }
  }
  return kNever;
}

bool inside_any(const std::vector<TimeWindow>& windows, Seconds t) {
  return std::any_of(windows.begin(), windows.end(),
                     [t](const TimeWindow& w) { return w.contains(t); });
}

const char* to_string(PatientClass c) {
  return c == PatientClass::chronic ? "chronic" : "walk_in";
}

const char* to_string(Leg leg) { return leg == Leg::outbound ? "out" : "in"; }

const char* to_string(StopAction action) {
  switch (action) {
    case StopAction::depot:
      return "depot";
    case StopAction::pickup:
      return "pickup";
    case StopAction::delivery:
      return "delivery";
  }
  return "?";
}

std::size_t Instance::chronic_count() const {
  return static_cast<std::size_t>(
      std::count_if(requests.begin(), requests.end(), [](const RequestPair& r) { return r.chronic(); }));
}

double Instance::chronic_fraction() const {
  if (requests.empty()) {
    return 0.0;
  }
  return static_cast<double>(chronic_count()) / static_cast<double>(requests.size());
}

Seconds max_ride_time(double ride_factor, Seconds direct) {
  return static_cast<Seconds>(std::floor(ride_factor * static_cast<double>(direct) + 1e-9));
}

TimeWindow implicit_pickup_window(TimeWindow delivery, Seconds direct, Seconds max_ride) {
  if (max_ride < direct) {
    throw MalformedWindow("maximum ride time is shorter than the direct ride");
  }
  if (delivery.empty()) {
    throw MalformedWindow("empty delivery window");
  }
  return {delivery.earliest - max_ride, delivery.latest - direct};
}

TimeWindow fixed_arrival_window(Seconds appointment, const ServiceParams& s) {
  return {appointment - s.max_window, appointment};
}

TimeWindow fixed_departure_window(Seconds appointment, const ServiceParams& s) {
  return {appointment + s.gp_stay, appointment + s.gp_stay + s.max_window};
}

TimeWindow coupling_window(Seconds arrival, const ServiceParams& s) {
  return {arrival + s.gp_stay, arrival + s.gp_stay + s.max_window};
}

RequestPair make_request(RequestId id, PatientClass cls, NodeId home, NodeId gp,
                         Seconds appointment, Seconds release_time, const TravelMatrix& travel,
                         const ServiceParams& service) {
  RequestPair r;
  r.id = id;
  r.patient_class = cls;
  r.home = home;
  r.gp = gp;
  r.appointment = appointment;
  r.release_time = cls == PatientClass::chronic ? 0 : release_time;
  r.max_ride_outbound = max_ride_time(service.ride_factor, travel(home, gp));
  r.max_ride_inbound = max_ride_time(service.ride_factor, travel(gp, home));
  if (cls == PatientClass::walk_in) {
    r.outbound_window = fixed_arrival_window(appointment, service);
    r.inbound_window = fixed_departure_window(appointment, service);
  }
  return r;
}

void refresh_derived_fields(Instance& inst) {
  for (auto& r : inst.requests) {
    r = make_request(r.id, r.patient_class, r.home, r.gp, r.appointment, r.release_time,
                     inst.travel, inst.service);
  }
}

namespace {

void check_triangle(const TravelMatrix& t, std::vector<std::string>& out) {
  const auto n = static_cast<NodeId>(t.size());
  auto check = [&](NodeId a, NodeId b, NodeId c) {
    if (t(a, c) > t(a, b) + t(b, c)) {
      std::ostringstream os;
      os << "triangle inequality at (" << a << "," << b << "," << c << ")";
      out.push_back(os.str());
      return false;
    }
    return true;
  };
  constexpr std::size_t kMaxReported = 20;
  if (t.size() <= 400) {
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = 0; b < n; ++b) {
        for (NodeId c = 0; c < n; ++c) {
          if (!check(a, b, c) && out.size() >= kMaxReported) {
            return;
          }
        }
      }
    }
    return;
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<NodeId> pick(0, n - 1);
  for (int k = 0; k < 200000; ++k) {
    const NodeId a = pick(rng);
    const NodeId b = pick(rng);
    const NodeId c = pick(rng);
    if (!check(a, b, c) && out.size() >= kMaxReported) {
      return;
    }
  }
}

}  // namespace

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  auto& v = report.violations;
  auto add = [&v](auto&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    v.push_back(os.str());
  };

  const auto nodes = inst.locations.size();
  for (std::size_t i = 0; i < nodes; ++i) {
    if (inst.locations[i].id != static_cast<NodeId>(i)) {
      add("location ", i, " has id ", inst.locations[i].id);
    }
  }
  if (inst.travel.size() != nodes) {
    add("matrix dimension ", inst.travel.size(), " does not match ", nodes, " locations");
    return report;
  }
  const auto n = static_cast<NodeId>(nodes);
  for (NodeId j = 0; j < n; ++j) {
    if (inst.travel(j, j) != 0) {
      add("nonzero diagonal at node ", j);
    }
    for (NodeId k = 0; k < n; ++k) {
      if (inst.travel(j, k) < 0) {
        add("negative travel time (", j, ",", k, ")");
      }
    }
  }
  check_triangle(inst.travel, v);

  const auto& f = inst.fleet;
  if (f.vehicles < 1) add("fleet needs at least one vehicle");
  if (f.capacity < 1) add("vehicle capacity must be positive");
  if (f.max_route_duration <= 0) add("maximum route duration must be positive");
  if (f.depot < 0 || f.depot >= n) add("depot references unknown node ", f.depot);
  if (f.sessions.empty()) add("no opening sessions");
  for (std::size_t i = 0; i < f.sessions.size(); ++i) {
    if (f.sessions[i].empty()) add("session ", i, " is empty");
    if (i > 0 && f.sessions[i].earliest <= f.sessions[i - 1].latest) {
      add("sessions ", i - 1, " and ", i, " overlap or are unordered");
    }
  }

  const auto& s = inst.service;
  if (s.gp_stay <= 0 || s.max_window <= 0 || s.ride_factor <= 0.0 || s.rho <= 0.0 ||
      s.congestion_limit <= 0 || s.congestion_window <= 0) {
    add("service parameters must be positive");
  }

  for (std::size_t i = 0; i < inst.requests.size(); ++i) {
    const auto& r = inst.requests[i];
    if (r.id != static_cast<RequestId>(i)) {
      add("request at index ", i, " has id ", r.id);
    }
    if (r.home < 0 || r.home >= n) {
      add("request ", r.id, " references unknown node ", r.home);
      continue;
    }
    if (r.gp < 0 || r.gp >= n) {
      add("request ", r.id, " references unknown node ", r.gp);
      continue;
    }
    for (const auto* w : {&r.outbound_window, &r.inbound_window}) {
      if (!w->has_value()) continue;
      if ((*w)->empty()) add("request ", r.id, ": empty window");
      if ((*w)->length() > s.max_window) add("request ", r.id, ": window exceeds W");
    }
    if (r.chronic() && r.release_time != 0) {
      add("request ", r.id, ": chronic release time must be 0");
    }
    if (!r.chronic() && !r.outbound_window) {
      add("request ", r.id, ": walk-in without arrival window");
    }
    if (r.max_ride_outbound < inst.direct_time(r, Leg::outbound) ||
        r.max_ride_inbound < inst.direct_time(r, Leg::inbound)) {
      add("request ", r.id, ": maximum ride time below direct time");
    }
  }
  return report;
}

}  // namespace darpcf
