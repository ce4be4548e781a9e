#pragma once

#include "darpcf/generator.hpp"

namespace darpcf::testing {

/// A generated day scaled down to `pairs` patients and `vehicles` vehicles.
inline Instance small_day(std::uint64_t seed, int pairs, int vehicles = 3,
                          double chronic_lo = 0.10, double chronic_hi = 0.21) {
  GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.pairs_morning = cfg.pairs_full_day = {pairs, pairs};
  cfg.chronic_fraction = {chronic_lo, chronic_hi};
  cfg.fleet.vehicles = vehicles;
  return generate_instance(cfg);
}

}  // namespace darpcf::testing
