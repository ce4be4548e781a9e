#pragma once

#include <string>
#include <vector>

#include "darpcf/instance.hpp"
#include "darpcf/schedule.hpp"

namespace darpcf {

struct VerifyOptions {
  /// Treat chronic patients like walk-ins, with windows around their
  /// original appointment (the fixed-appointment baseline).
  bool fixed_chronic_appointments = false;
};

struct FeasibilityReport {
  std::vector<std::string> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Checks a set of vehicle schedules against the instance using only the
/// serialized stop fields. Independent of solver state.
[[nodiscard]] FeasibilityReport verify_schedules(const Instance& inst, const Schedules& schedules,
                                                 const VerifyOptions& options = {});

struct ServedStats {
  int served_pairs = 0;
  int served_rides = 0;
  Seconds total_drive_time = 0;

  friend bool operator==(const ServedStats&, const ServedStats&) = default;
};

[[nodiscard]] ServedStats served_count(const Instance& inst, const Schedules& schedules);

/// served[i] is true iff both legs of request i are delivered.
[[nodiscard]] std::vector<bool> served_requests(const Instance& inst, const Schedules& schedules);

}  // namespace darpcf
