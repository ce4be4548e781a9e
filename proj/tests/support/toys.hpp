#pragma once

#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include "darpcf/instance.hpp"

namespace darpcf::testing {

inline constexpr Seconds kMinute = 60;

/// Nodes on a line at the given positions (minutes); travel time is the
/// distance in minutes, in seconds.
inline TravelMatrix line_matrix(const std::vector<double>& xs) {
  TravelMatrix t(xs.size());
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t b = 0; b < xs.size(); ++b) {
      t(static_cast<NodeId>(a), static_cast<NodeId>(b)) =
          static_cast<Seconds>(std::llround(std::abs(xs[a] - xs[b]) * 60.0));
    }
  }
  return t;
}

inline ServiceParams toy_service() {
  ServiceParams s;
  s.gp_stay = 30 * kMinute;
  s.max_window = 20 * kMinute;
  s.ride_factor = 1.5;
  s.rho = 1.0;
  s.congestion_limit = 6;
  s.congestion_window = 30 * kMinute;
  return s;
}

/// Depot and patient A at x=0, patient B at x=1, their GPs at x=10 and x=9.
/// Node ids: 0 depot, 1 home A, 2 home B, 3 GP A, 4 GP B.
inline Instance collinear_toy(int vehicles = 1, PatientClass cls = PatientClass::chronic,
                              Seconds appointment_a = 2 * 3600, Seconds appointment_b = 2 * 3600) {
  Instance inst;
  inst.name = "collinear";
  const std::vector<double> xs{0, 0, 1, 10, 9};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    inst.locations.push_back({static_cast<NodeId>(i), xs[i], 0.0});
  }
  inst.travel = line_matrix(xs);
  inst.service = toy_service();
  inst.fleet.vehicles = vehicles;
  inst.fleet.capacity = 4;
  inst.fleet.day_start = 0;
  inst.fleet.max_route_duration = 8 * 3600;
  inst.fleet.depot = 0;
  inst.fleet.sessions = {{1800, 6 * 3600}};
  inst.requests.push_back(make_request(0, cls, 1, 3, appointment_a, 0, inst.travel, inst.service));
  inst.requests.push_back(make_request(1, cls, 2, 4, appointment_b, 0, inst.travel, inst.service));
  return inst;
}

/// Random points in a square (side in minutes of driving), rounded up to
/// whole seconds so the matrix is metric.
inline TravelMatrix random_metric(std::mt19937_64& rng, std::size_t nodes, double side = 30.0) {
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<std::pair<double, double>> p(nodes);
  for (auto& q : p) q = {u(rng), u(rng)};
  TravelMatrix t(nodes);
  for (std::size_t a = 0; a < nodes; ++a) {
    for (std::size_t b = 0; b < nodes; ++b) {
      if (a == b) continue;
      const double d = std::hypot(p[a].first - p[b].first, p[a].second - p[b].second);
      t(static_cast<NodeId>(a), static_cast<NodeId>(b)) = static_cast<Seconds>(std::ceil(d * 60.0));
    }
  }
  return t;
}

}  // namespace darpcf::testing
