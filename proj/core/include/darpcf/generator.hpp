#pragma once

#include <cstdint>
#include <stdexcept>

#include "darpcf/instance.hpp"

namespace darpcf {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename T>
struct Range {
  T lo{};
  T hi{};
  [[nodiscard]] bool empty() const { return lo > hi; }
};

enum class SessionLayout { morning_only, full_day, mixed };

/// Synthetic rural geography: GPs sit at a few hubs, homes are spread along
/// straight main roads between the hubs, and a share of them crowd around
/// the hubs themselves.
struct GeneratorConfig {
  std::uint64_t seed = 1;
  SessionLayout layout = SessionLayout::mixed;
  /// Patients on days with a morning session only / with an afternoon too.
  Range<int> pairs_morning{1100, 1350};
  Range<int> pairs_full_day{1600, 2000};
  Range<double> chronic_fraction{0.10, 0.21};

  int hubs = 3;
  int gps = 20;
  double region_km = 30.0;
  double speed_kmh = 40.0;
  /// Spread of homes across a road and around a hub, in km.
  double road_jitter_km = 1.5;
  double hub_jitter_km = 1.0;
  double near_hub_share = 0.15;
  /// Probability that a patient picks a GP at the hub nearest to home.
  double local_gp_share = 0.75;

  TimeWindow morning{1800, 16200};
  TimeWindow afternoon{23400, 37800};
  /// Appointments fall on this grid.
  Seconds appointment_step = 300;
  /// Walk-ins call this many minutes before their appointment.
  Range<int> release_lead_minutes{30, 120};

  FleetParams fleet;       // sessions and day length are filled in
  ServiceParams service;
};

/// Deterministic for a given config. Throws ConfigError on empty ranges or
/// out-of-range shares.
[[nodiscard]] Instance generate_instance(const GeneratorConfig& cfg);

}  // namespace darpcf
