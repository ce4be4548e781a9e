#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "darpcf/instance.hpp"
#include "darpcf/schedule.hpp"

namespace darpcf {

/// Sorted outbound arrival times per GP node, used for the congestion limit.
class ArrivalIndex {
 public:
  ArrivalIndex() = default;
  ArrivalIndex(const Instance& inst, const Schedules& schedules);

  struct Change {
    NodeId gp = 0;
    std::optional<Seconds> before;  // unset for a new arrival
    std::optional<Seconds> after;   // unset for a removed arrival
  };

  /// True if applying all changes keeps every half-open window of length
  /// `window` at or below `limit` arrivals per GP.
  [[nodiscard]] bool admits(const std::vector<Change>& changes, int limit, Seconds window) const;
  void apply(const std::vector<Change>& changes);
  [[nodiscard]] const std::vector<Seconds>& arrivals(NodeId gp) const;

 private:
  std::vector<std::vector<Seconds>> by_gp_;
};

/// One ride to insert, with everything the insertion needs to know about it.
struct RideSpec {
  RequestId request = 0;
  Leg leg = Leg::outbound;
  NodeId pickup = 0;
  NodeId delivery = 0;
  TimeWindow pickup_window;
  TimeWindow delivery_window;
  Seconds max_ride = 0;
  /// The delivery must also fall inside an opening session; after insertion
  /// its time is frozen.
  bool session_delivery = false;
};

/// Ride with fixed windows around the appointment (walk-ins, and chronic
/// patients in the fixed-appointment baseline).
[[nodiscard]] RideSpec fixed_ride(const Instance& inst, const RequestPair& r, Leg leg);
/// Chronic outbound whose arrival may be anywhere in the opening sessions.
[[nodiscard]] RideSpec flexible_outbound(const Instance& inst, const RequestPair& r);
/// Chronic inbound once the outbound arrival is known.
[[nodiscard]] RideSpec coupled_inbound(const Instance& inst, const RequestPair& r, Seconds arrival);

struct InsertOptions {
  /// Stops planned before this time are immutable (the release time of an
  /// online request).
  Seconds frozen_until = 0;
  /// Keep each schedule's committed prefix closed.
  bool respect_fixed_prefix = true;
  /// If non-empty, only vehicles with allowed[v] are considered.
  std::vector<bool> allowed;
};

struct InsertionCandidate {
  VehicleId vehicle = 0;
  /// Positions in the original stop list: the pickup goes before stop
  /// `pickup_pos`, the delivery before stop `delivery_pos` (after the pickup
  /// when equal).
  std::size_t pickup_pos = 0;
  std::size_t delivery_pos = 0;
  /// Added drive time.
  Seconds delta_cost = 0;
  Seconds pickup_time = 0;
  Seconds delivery_time = 0;

  [[nodiscard]] auto key() const {
    return std::tuple(delta_cost, vehicle, pickup_pos, delivery_pos);
  }
  friend bool operator==(const InsertionCandidate&, const InsertionCandidate&) = default;
};

/// Schedules plus the bookkeeping needed to insert into them.
class RoutingState {
 public:
  RoutingState(const Instance& inst, Schedules schedules);

  [[nodiscard]] const Instance& instance() const { return *inst_; }
  [[nodiscard]] const Schedules& schedules() const { return schedules_; }
  [[nodiscard]] const Schedule& schedule(VehicleId v) const {
    return schedules_[static_cast<std::size_t>(v)];
  }
  [[nodiscard]] const ArrivalIndex& arrivals() const { return arrivals_; }

  /// Every feasible insertion of the ride, ordered by key().
  [[nodiscard]] std::vector<InsertionCandidate> enumerate(const RideSpec& ride,
                                                          const InsertOptions& options) const;
  [[nodiscard]] std::optional<InsertionCandidate> best(const RideSpec& ride,
                                                       const InsertOptions& options) const;
  /// Feasible insertions into one schedule, unordered.
  void enumerate_vehicle(const RideSpec& ride, const InsertOptions& options, VehicleId v,
                         std::vector<InsertionCandidate>& out) const;

  struct Undo {
    VehicleId vehicle = 0;
    Schedule before;
    std::vector<ArrivalIndex::Change> changes;
  };
  /// Applies a candidate returned by enumerate/best for the same ride.
  Undo apply(const RideSpec& ride, const InsertionCandidate& c);
  void undo(Undo&& u);

  /// Removes one leg of a request from whichever schedule serves it.
  bool remove(RequestId request, Leg leg);
  /// Marks the whole current schedule of v (but the end depot) committed.
  void commit(VehicleId v);
  /// Replaces a schedule wholesale, e.g. when placing a precomputed route.
  void replace(VehicleId v, Schedule s);

  [[nodiscard]] Schedules release() && { return std::move(schedules_); }

 private:
  const Instance* inst_;
  Schedules schedules_;
  ArrivalIndex arrivals_;
};

enum class PairMode {
  /// Both legs have fixed windows from the appointment.
  fixed_windows,
  /// Flexible outbound; the inbound must depart within the coupling window
  /// of the realized arrival.
  coupled,
};

struct PairPlan {
  InsertionCandidate outbound;
  InsertionCandidate inbound;
  [[nodiscard]] Seconds total() const { return outbound.delta_cost + inbound.delta_cost; }
};

struct PairOptions {
  InsertOptions insert;
  /// Outbound candidates, cheapest first, for which the inbound is searched.
  std::size_t outbound_probes = 16;
};

/// Cheapest joint insertion of both legs; the inbound is evaluated on the
/// schedules with the outbound already applied, so both legs may share a
/// vehicle. Ties: outbound key, then inbound key.
[[nodiscard]] std::optional<PairPlan> best_pair(RoutingState& state, const RequestPair& r,
                                                PairMode mode, const PairOptions& options);

/// Inserts both legs or neither. Returns false (state unchanged) on rejection.
bool insert_pair(RoutingState& state, const RequestPair& r, PairMode mode,
                 const PairOptions& options);

/// Default probe budgets.
inline constexpr std::size_t kFixedPairProbes = 16;
inline constexpr std::size_t kCoupledPairProbes = 3;

[[nodiscard]] inline PairOptions pair_options(PairMode mode, InsertOptions insert = {}) {
  return {std::move(insert),
          mode == PairMode::coupled ? kCoupledPairProbes : kFixedPairProbes};
}

}  // namespace darpcf
