#include <gtest/gtest.h>

#include <algorithm>

#include "darpcf/verify.hpp"
#include "support/schedules.hpp"
#include "support/toys.hpp"

namespace darpcf {
namespace {

using testing::collinear_toy;
using testing::hand_schedule;
using testing::ride_stop;

bool mentions(const std::vector<std::string>& messages, const std::string& needle) {
  return std::any_of(messages.begin(), messages.end(),
                     [&](const std::string& m) { return m.find(needle) != std::string::npos; });
}

// Vehicle 0 takes both patients to their GPs on a shared ride, vehicle 1
// brings both home. Every time below was worked out by hand.
Schedules toy_day(Seconds first_return_pickup = 5400) {
  using enum StopAction;
  const Seconds b_pick = first_return_pickup + 60;
  return {
      hand_schedule(0, 0, 0,
                    {ride_stop(1, pickup, 0, Leg::outbound, 3000),
                     ride_stop(2, pickup, 1, Leg::outbound, 3060),
                     ride_stop(4, delivery, 1, Leg::outbound, 3540),
                     ride_stop(3, delivery, 0, Leg::outbound, 3600)},
                    4200),
      hand_schedule(1, 0, 0,
                    {ride_stop(3, pickup, 0, Leg::inbound, first_return_pickup),
                     ride_stop(4, pickup, 1, Leg::inbound, b_pick),
                     ride_stop(2, delivery, 1, Leg::inbound, b_pick + 480),
                     ride_stop(1, delivery, 0, Leg::inbound, b_pick + 540)},
                    b_pick + 540),
  };
}

TEST(Validation, FlagsTriangleViolation) {
  Instance inst = collinear_toy();
  inst.requests.clear();
  inst.locations.resize(3);
  inst.travel = TravelMatrix(3);
  inst.travel(0, 1) = inst.travel(1, 0) = 10;
  inst.travel(1, 2) = inst.travel(2, 1) = 1;
  inst.travel(0, 2) = inst.travel(2, 0) = 20;
  const auto report = validate_instance(inst);
  EXPECT_TRUE(mentions(report.violations, "triangle inequality at (0,1,2)"));
}

TEST(Validation, AcceptsWellFormedToy) {
  EXPECT_TRUE(validate_instance(collinear_toy()).ok());
  EXPECT_TRUE(validate_instance(collinear_toy(2, PatientClass::walk_in)).ok());
}

TEST(Validation, FlagsOverlongWindow) {
  Instance inst = collinear_toy(1, PatientClass::walk_in);
  auto& w = *inst.requests[0].outbound_window;
  w.earliest = w.latest - inst.service.max_window - 1;
  EXPECT_TRUE(mentions(validate_instance(inst).violations, "window exceeds W"));
}

TEST(ImplicitPickupWindow, WorkedExample) {
  // Delivery between 10:45 and 11:00, 30 minutes direct, at most 45 on board.
  const auto w = implicit_pickup_window({38700, 39600}, 1800, 2700);
  EXPECT_EQ(w, (TimeWindow{36000, 37800}));
}

TEST(ImplicitPickupWindow, DirectRidesOnly) {
  const auto w = implicit_pickup_window({1000, 1200}, 300, 300);
  EXPECT_EQ(w, (TimeWindow{700, 900}));
}

TEST(ImplicitPickupWindow, NegativeTimesAreLeftToTheCaller) {
  EXPECT_EQ(implicit_pickup_window({0, 0}, 10, 15), (TimeWindow{-15, -10}));
}

TEST(ImplicitPickupWindow, RejectsRideLimitBelowDirectTime) {
  EXPECT_THROW((void)implicit_pickup_window({0, 100}, 50, 40), MalformedWindow);
}

TEST(Windows, CouplingAndFixedWindows) {
  const auto s = testing::toy_service();
  EXPECT_EQ(coupling_window(3600, s), (TimeWindow{5400, 6600}));
  EXPECT_EQ(fixed_arrival_window(7200, s), (TimeWindow{6000, 7200}));
  EXPECT_EQ(fixed_departure_window(7200, s), (TimeWindow{9000, 10200}));
}

TEST(Verify, HandBuiltToyDayIsFeasible) {
  const auto inst = collinear_toy(2);
  const auto report = verify_schedules(inst, toy_day());
  EXPECT_TRUE(report.ok()) << report.violations.front();
}

TEST(Verify, PrecedenceViolation) {
  using enum StopAction;
  const auto inst = collinear_toy(2);
  auto day = toy_day();
  auto& stops = day[0].stops;
  std::swap(stops[1], stops[4]);  // A dropped before being picked up
  stops[1].planned_time = 600;
  stops[4].planned_time = 3600;
  const auto report = verify_schedules(inst, day);
  EXPECT_TRUE(mentions(report.violations, "precedence violated at stop 1"));
}

TEST(Verify, CouplingWindowBoundary) {
  const auto inst = collinear_toy(2);
  // Arrival at 3600: the return must start between 5400 and 6600.
  auto late = toy_day(6601);
  EXPECT_TRUE(mentions(verify_schedules(inst, late).violations, "request 0: coupling window violated"));
  // B's return now leaves just after its own window closes; only A is on time.
  auto on_time = toy_day(6600);
  EXPECT_FALSE(mentions(verify_schedules(inst, on_time).violations, "request 0: coupling window"));
}

TEST(Verify, ServingOnlyOneLegIsReported) {
  const auto inst = collinear_toy(2);
  auto day = toy_day();
  day[1] = hand_schedule(1, 0, 0, {}, 0);
  EXPECT_TRUE(mentions(verify_schedules(inst, day).violations, "pair served partially"));
}

TEST(Verify, CapacityIsChecked) {
  auto inst = collinear_toy(2);
  inst.fleet.capacity = 1;
  EXPECT_TRUE(mentions(verify_schedules(inst, toy_day()).violations, "outside [0, 1]"));
}

TEST(Verify, RideTimeIsChecked) {
  auto inst = collinear_toy(2);
  inst.requests[0].max_ride_outbound = 599;
  EXPECT_TRUE(mentions(verify_schedules(inst, toy_day()).violations, "ride time exceeds maximum"));
}

TEST(Verify, RouteDurationIsChecked) {
  auto inst = collinear_toy(2);
  inst.fleet.max_route_duration = 4199;
  EXPECT_TRUE(
      mentions(verify_schedules(inst, toy_day()).violations, "route duration exceeds the maximum"));
}

TEST(Verify, CongestionIsChecked) {
  auto inst = collinear_toy(2);
  // Both GPs share node 3 for this check.
  inst.requests[1].gp = 3;
  inst.travel(2, 4) = inst.travel(2, 3);
  inst.service.congestion_limit = 1;
  auto day = toy_day();
  day[0].stops[3].node = 3;
  day[1].stops[2].node = 3;
  refresh_derived_fields(inst);
  EXPECT_TRUE(mentions(verify_schedules(inst, day).violations, "congestion at gp 3"));
}

TEST(Verify, AppointmentsMustFallInsideSessions) {
  auto inst = collinear_toy(2);
  inst.fleet.sessions = {{3700, 6 * 3600}};
  EXPECT_TRUE(
      mentions(verify_schedules(inst, toy_day()).violations, "appointment outside opening hours"));
}

TEST(Verify, WalkInsRespectTheirWindows) {
  // Appointments at 3600 give arrival windows [2400, 3600].
  const auto inst = collinear_toy(2, PatientClass::walk_in, 3600, 3600);
  EXPECT_TRUE(verify_schedules(inst, toy_day()).ok());
  const auto moved = collinear_toy(2, PatientClass::walk_in, 3500, 3600);
  EXPECT_TRUE(mentions(verify_schedules(moved, toy_day()).violations, "request 0: arrival window violated"));
}

TEST(ServedCount, Empty) {
  const auto inst = collinear_toy(2);
  EXPECT_EQ(served_count(inst, make_empty_schedules(inst)), (ServedStats{0, 0, 0}));
}

TEST(ServedCount, ToyDay) {
  const auto inst = collinear_toy(2);
  // Drive: 0 + 1 + 8 + 1 + 10 minutes out, 10 + 1 + 8 + 1 + 0 back.
  EXPECT_EQ(served_count(inst, toy_day()), (ServedStats{2, 4, 2400}));
}

TEST(ServedCount, PartialPairsCountOnlyAsRides) {
  const auto inst = collinear_toy(2);
  auto day = toy_day();
  day[1] = hand_schedule(1, 0, 0, {}, 0);
  const auto stats = served_count(inst, day);
  EXPECT_EQ(stats.served_pairs, 0);
  EXPECT_EQ(stats.served_rides, 2);
}

TEST(TimeSlack, SingleStopWindow) {
  TravelMatrix t(2);
  Schedule s;
  s.stops = {testing::depot_stop(0, 100), testing::depot_stop(0, 100)};
  s.stops[1].window = {100, 160};
  EXPECT_EQ(time_slack(s, t, 1), 60);
}

TEST(TimeSlack, BlockedByTightSuccessor) {
  auto t = testing::line_matrix({0, 1});
  Schedule s;
  s.stops = {testing::depot_stop(0, 0), testing::depot_stop(1, 60)};
  s.stops[0].window = {0, 1000};
  s.stops[1].window = {0, 60};
  EXPECT_EQ(time_slack(s, t, 0), 0);
}

TEST(TimeSlack, DownstreamLimitsLocalWindow) {
  auto t = testing::line_matrix({0, 1});
  Schedule s;
  s.stops = {testing::depot_stop(0, 0), testing::depot_stop(1, 60)};
  s.stops[0].window = {0, 12};
  s.stops[1].window = {0, 65};
  EXPECT_EQ(time_slack(s, t, 0), 5);
  EXPECT_EQ(time_slacks(s, t), (std::vector<Seconds>{5, 5}));
}

TEST(Schedule, FrozenPositionSkipsStopsAlreadyServed) {
  const auto inst = collinear_toy(2);
  auto day = toy_day();
  // At 3030 the vehicle is driving from A's home to B's home.
  EXPECT_EQ(first_open_position(day[0], inst.travel, 3030, false), 3U);
  // At 2000 it is still waiting at the depot.
  EXPECT_EQ(first_open_position(day[0], inst.travel, 2000, false), 1U);
}

TEST(Schedule, FinishedTourStaysClosed) {
  const auto inst = collinear_toy(2);
  const auto day = toy_day();
  // Vehicle 0 is back at the depot at 4200.
  EXPECT_EQ(first_open_position(day[0], inst.travel, 4201, false), day[0].stops.size());
  EXPECT_EQ(first_open_position(day[0], inst.travel, 4200, false), day[0].end_index());
  // An unused vehicle can always leave.
  const auto empty = make_empty_schedules(inst);
  EXPECT_EQ(first_open_position(empty[0], inst.travel, 9000, false), 1U);
}

TEST(Schedule, RemoveLegKeepsTimes) {
  auto day = toy_day();
  ASSERT_TRUE(remove_leg(day[0], 1, Leg::outbound));
  EXPECT_EQ(day[0].stops.size(), 4U);
  EXPECT_EQ(day[0].stops[2].planned_time, 3600);
  EXPECT_EQ(day[0].stops[1].load_after, 1);
  EXPECT_FALSE(remove_leg(day[0], 1, Leg::outbound));
}

}  // namespace
}  // namespace darpcf
