#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "darpcf/types.hpp"

namespace darpcf {

struct Location {
  NodeId id = 0;
  double x_km = 0.0;
  double y_km = 0.0;

  friend bool operator==(const Location&, const Location&) = default;
};

/// Dense, row-major travel times in seconds. Node copies (the GP-side
/// duplicates used for inbound rides) share the row of their original node.
class TravelMatrix {
 public:
  TravelMatrix() = default;
  explicit TravelMatrix(std::size_t nodes, Seconds fill = 0)
      : nodes_(nodes), data_(nodes * nodes, fill) {}

  [[nodiscard]] std::size_t size() const { return nodes_; }

  [[nodiscard]] Seconds operator()(NodeId from, NodeId to) const {
    return data_[static_cast<std::size_t>(from) * nodes_ + static_cast<std::size_t>(to)];
  }
  Seconds& operator()(NodeId from, NodeId to) {
    return data_[static_cast<std::size_t>(from) * nodes_ + static_cast<std::size_t>(to)];
  }

  friend bool operator==(const TravelMatrix&, const TravelMatrix&) = default;

 private:
  std::size_t nodes_ = 0;
  std::vector<Seconds> data_;
};

/// One patient: an outbound ride home -> GP and the inbound ride back.
struct RequestPair {
  RequestId id = 0;
  PatientClass patient_class = PatientClass::walk_in;
  NodeId home = 0;
  NodeId gp = 0;
  /// Fixed appointment for walk-ins; the original booking for chronic
  /// patients (used only by the fixed-appointment baseline).
  Seconds appointment = 0;
  /// Time at which the request becomes known. Always 0 for chronic patients.
  Seconds release_time = 0;
  /// Arrival window at the GP. Unset for chronic patients: the arrival is
  /// chosen by the scheduler inside the opening sessions.
  std::optional<TimeWindow> outbound_window;
  /// Departure window at the GP. Unset for chronic patients until their
  /// arrival is fixed.
  std::optional<TimeWindow> inbound_window;
  Seconds max_ride_outbound = 0;
  Seconds max_ride_inbound = 0;

  [[nodiscard]] bool chronic() const { return patient_class == PatientClass::chronic; }
  [[nodiscard]] Seconds max_ride(Leg leg) const {
    return leg == Leg::outbound ? max_ride_outbound : max_ride_inbound;
  }
  [[nodiscard]] NodeId pickup_node(Leg leg) const { return leg == Leg::outbound ? home : gp; }
  [[nodiscard]] NodeId delivery_node(Leg leg) const { return leg == Leg::outbound ? gp : home; }

  friend bool operator==(const RequestPair&, const RequestPair&) = default;
};

struct FleetParams {
  int vehicles = 10;
  int capacity = 4;
  /// Start of the service day; every route leaves the depot at this time.
  Seconds day_start = 0;
  Seconds max_route_duration = 0;
  NodeId depot = 0;
  /// GP opening sessions, ordered and non-overlapping.
  std::vector<TimeWindow> sessions;

  [[nodiscard]] Seconds day_end() const { return day_start + max_route_duration; }

  friend bool operator==(const FleetParams&, const FleetParams&) = default;
};

struct ServiceParams {
  Seconds gp_stay = 30 * 60;
  Seconds max_window = 20 * 60;
  double ride_factor = 1.5;
  double rho = 1.5;
  int congestion_limit = 6;
  Seconds congestion_window = 30 * 60;

  friend bool operator==(const ServiceParams&, const ServiceParams&) = default;
};

struct Instance {
  std::string name;
  std::vector<Location> locations;
  TravelMatrix travel;
  std::vector<RequestPair> requests;  // requests[i].id == i
  FleetParams fleet;
  ServiceParams service;

  [[nodiscard]] const RequestPair& request(RequestId id) const {
    return requests[static_cast<std::size_t>(id)];
  }
  [[nodiscard]] Seconds direct_time(const RequestPair& r, Leg leg) const {
    return travel(r.pickup_node(leg), r.delivery_node(leg));
  }
  [[nodiscard]] std::size_t chronic_count() const;
  [[nodiscard]] double chronic_fraction() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Maximum ride time for a leg with the given direct time.
[[nodiscard]] Seconds max_ride_time(double ride_factor, Seconds direct);

/// Pickup window implied by a delivery window and the ride-time limit:
/// [e - max_ride, l - direct]. Throws MalformedWindow if max_ride < direct
/// or the delivery window is empty.
[[nodiscard]] TimeWindow implicit_pickup_window(TimeWindow delivery, Seconds direct,
                                                Seconds max_ride);

/// Arrival window [a - W, a] and departure window [a + d_GP, a + d_GP + W]
/// around a fixed appointment.
[[nodiscard]] TimeWindow fixed_arrival_window(Seconds appointment, const ServiceParams& s);
[[nodiscard]] TimeWindow fixed_departure_window(Seconds appointment, const ServiceParams& s);

/// Departure window of a chronic inbound once the outbound arrival is known.
[[nodiscard]] TimeWindow coupling_window(Seconds arrival, const ServiceParams& s);

/// Builds a request and fills the windows and ride limits derived from the
/// appointment and the service parameters.
[[nodiscard]] RequestPair make_request(RequestId id, PatientClass cls, NodeId home, NodeId gp,
                                       Seconds appointment, Seconds release_time,
                                       const TravelMatrix& travel, const ServiceParams& service);

/// Recomputes windows and ride limits of every request, e.g. after a
/// parameter override.
void refresh_derived_fields(Instance& inst);

struct ValidationReport {
  std::vector<std::string> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Structural checks. The triangle inequality is checked on all triples for
/// small matrices and on a fixed pseudo-random sample of triples otherwise.
[[nodiscard]] ValidationReport validate_instance(const Instance& inst);

}  // namespace darpcf
