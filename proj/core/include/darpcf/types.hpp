#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace darpcf {

/// Integer seconds since the start of the service day.
using Seconds = std::int64_t;
using NodeId = std::int32_t;
using RequestId = std::int32_t;
using VehicleId = std::int32_t;

inline constexpr RequestId kNoRequest = -1;

/// Sentinel for "no upper bound". Kept well below the int64 limit so that
/// adding travel times to it cannot overflow.
inline constexpr Seconds kNever = std::numeric_limits<Seconds>::max() / 4;

/// Closed interval [earliest, latest].
struct TimeWindow {
  Seconds earliest = 0;
  Seconds latest = kNever;

  [[nodiscard]] constexpr bool contains(Seconds t) const {
    return earliest <= t && t <= latest;
  }
  [[nodiscard]] constexpr Seconds length() const { return latest - earliest; }
  [[nodiscard]] constexpr bool empty() const { return earliest > latest; }

  friend constexpr bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

/// Sorted, disjoint list of windows. Returns the earliest t' >= t inside one
/// of them, or kNever.
[[nodiscard]] Seconds earliest_in(const std::vector<TimeWindow>& windows, Seconds t);
[[nodiscard]] bool inside_any(const std::vector<TimeWindow>& windows, Seconds t);

enum class PatientClass : std::uint8_t { chronic, walk_in };
enum class Leg : std::uint8_t { outbound, inbound };
enum class StopAction : std::uint8_t { depot, pickup, delivery };

[[nodiscard]] const char* to_string(PatientClass c);
[[nodiscard]] const char* to_string(Leg leg);
[[nodiscard]] const char* to_string(StopAction action);

class MalformedWindow : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace darpcf
