#pragma once

#include <cstddef>
#include <vector>

#include "darpcf/instance.hpp"
#include "darpcf/types.hpp"

namespace darpcf {

struct Stop {
  NodeId node = 0;
  StopAction action = StopAction::depot;
  RequestId request = kNoRequest;
  Leg leg = Leg::outbound;
  /// Beginning of service at this stop.
  Seconds planned_time = 0;
  int load_after = 0;

  // Scheduling attributes; not part of the serialized record.
  TimeWindow window{};
  Seconds max_ride = kNever;  // delivery stops only

  [[nodiscard]] bool serves_request() const { return action != StopAction::depot; }
  /// A patient arriving at their GP.
  [[nodiscard]] bool is_gp_arrival() const {
    return action == StopAction::delivery && leg == Leg::outbound;
  }

  /// Equality over the serialized fields.
  [[nodiscard]] bool same_record(const Stop& o) const {
    return node == o.node && action == o.action && request == o.request && leg == o.leg &&
           planned_time == o.planned_time && load_after == o.load_after;
  }
};

/// Timed stop sequence of one vehicle: start depot, requests, end depot.
/// Service times are as early as possible; a vehicle waits at its previous
/// stop and leaves just in time for the next one.
struct Schedule {
  VehicleId vehicle = 0;
  std::vector<Stop> stops;
  /// Number of leading stops that are committed and must not change.
  std::size_t fixed_prefix_len = 0;

  [[nodiscard]] std::size_t size() const { return stops.size(); }
  [[nodiscard]] bool idle() const { return stops.size() <= 2; }
  [[nodiscard]] Seconds duration() const {
    return stops.back().planned_time - stops.front().planned_time;
  }
  /// Index of the end depot.
  [[nodiscard]] std::size_t end_index() const { return stops.size() - 1; }
};

using Schedules = std::vector<Schedule>;

/// One depot-to-depot schedule per vehicle, both depot stops at day start.
[[nodiscard]] Schedules make_empty_schedules(const Instance& inst);

/// Largest delay of the service start at `position` (propagated downstream
/// through waiting) that violates no window of this or a later stop,
/// including the route-length bound on the end depot.
[[nodiscard]] Seconds time_slack(const Schedule& s, const TravelMatrix& t, std::size_t position);
[[nodiscard]] std::vector<Seconds> time_slacks(const Schedule& s, const TravelMatrix& t);

/// For each delivery stop the index of its pickup, else -1.
[[nodiscard]] std::vector<std::ptrdiff_t> partner_pickups(const Schedule& s);

/// Where a vehicle is at time `at`: on the leg from stops[from] towards
/// stops[to], `fraction` of the way along (linear in time). A vehicle waiting
/// at a stop reports from == to.
struct VehiclePosition {
  std::size_t from = 0;
  std::size_t to = 0;
  double fraction = 0.0;
};
[[nodiscard]] VehiclePosition vehicle_position(const Schedule& s, const TravelMatrix& t,
                                               Seconds at);

/// First position at which new stops may be inserted when the request is
/// released at `frozen_until`. Stops served before that time are immutable,
/// and a vehicle already driving towards a stop completes that leg first.
/// Unless `respect_fixed_prefix` is false, the committed prefix stays closed.
/// A used vehicle whose return to the depot is planned before `frozen_until`
/// has finished for the day: the result is then past the end depot.
[[nodiscard]] std::size_t first_open_position(const Schedule& s, const TravelMatrix& t,
                                              Seconds frozen_until,
                                              bool respect_fixed_prefix = true);

/// Recomputes load_after along the sequence.
void recompute_loads(Schedule& s);

/// Removes both stops of (request, leg). Remaining service times are kept.
/// Returns false if the leg is not in the schedule.
bool remove_leg(Schedule& s, RequestId request, Leg leg);

/// Sum of travel times between consecutive stops.
[[nodiscard]] Seconds drive_time(const Schedule& s, const TravelMatrix& t);

}  // namespace darpcf
