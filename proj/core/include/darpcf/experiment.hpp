#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "darpcf/generator.hpp"
#include "darpcf/mclih.hpp"
#include "darpcf/mcma.hpp"
#include "darpcf/verify.hpp"

namespace darpcf {

enum class Algorithm { gih, mclih, mcma };

[[nodiscard]] const char* to_string(Algorithm a);
/// Throws ConfigError on unknown names.
[[nodiscard]] Algorithm parse_algorithm(std::string_view name);

/// Parameter changes applied to an instance before a run. Ride limits and
/// windows are re-derived afterwards.
struct Overrides {
  std::optional<int> vehicles;
  std::optional<int> q_cap;
  std::optional<double> ride_factor;
  std::optional<double> rho;
  std::optional<Seconds> max_window;
  std::optional<Seconds> gp_stay;
  std::optional<int> congestion_limit;
  std::optional<Seconds> congestion_window;
};

/// Throws ConfigError when a value is out of its documented range.
void apply_overrides(Instance& inst, const Overrides& o);

struct AlgorithmOptions {
  MclihOptions mclih;
  McmaOptions mcma;
};

/// Runs one scheduler; the seed replaces the seeds in `options`.
[[nodiscard]] SolveResult run_algorithm(const Instance& inst, Algorithm a, std::uint64_t seed,
                                        const AlgorithmOptions& options = {});

/// Chronic patients keep their booked appointment only in the baseline.
[[nodiscard]] VerifyOptions verify_options_for(Algorithm a);

struct RunResult {
  std::string instance;
  Algorithm algorithm = Algorithm::gih;
  int q_cap = 0;
  double ride_factor = 0.0;
  double rho = 0.0;
  int served_pairs = 0;
  int served_rides = 0;
  int rejected_pairs = 0;
  Seconds total_drive_s = 0;
  std::int64_t wall_ms = 0;
  std::uint64_t seed = 0;
  /// Empty when the schedules verified; otherwise the first violation.
  std::string failure;
  /// Sweep tag, empty outside sweeps.
  std::string sweep;
  double sweep_value = 0.0;

  [[nodiscard]] bool ok() const { return failure.empty(); }
};

/// Verifies a finished run and fills in its statistics; a failed check
/// becomes a failure row.
[[nodiscard]] RunResult describe_run(const Instance& inst, Algorithm a, std::uint64_t seed,
                                     const SolveResult& result);

/// Runs, verifies and measures one cell. Wall time is recorded only when
/// `timings` is set so that output stays reproducible by default.
[[nodiscard]] RunResult run_cell(const Instance& inst, Algorithm a, std::uint64_t seed,
                                 const AlgorithmOptions& options, bool timings);

enum class SweepParameter { none, q_cap, ride_factor, rho };

[[nodiscard]] const char* to_string(SweepParameter p);
[[nodiscard]] SweepParameter parse_sweep(std::string_view name);
/// The grid used when no values are given.
[[nodiscard]] std::vector<double> default_sweep_values(SweepParameter p);

struct ExperimentConfig {
  /// Instances are generated from `generator` with these seeds...
  std::vector<std::uint64_t> generator_seeds;
  GeneratorConfig generator;
  /// ...or taken as given.
  std::vector<Instance> instances;
  std::vector<Algorithm> algorithms{Algorithm::gih, Algorithm::mclih, Algorithm::mcma};
  Overrides overrides;
  SweepParameter sweep = SweepParameter::none;
  std::vector<double> sweep_values;
  std::uint64_t seed = 1;
  AlgorithmOptions options;
  unsigned threads = 0;  // 0: hardware concurrency
  bool timings = false;
};

/// Every (instance, sweep value, algorithm) cell, sorted. Cells whose
/// schedules fail verification come back as failure rows.
[[nodiscard]] std::vector<RunResult> run_experiment(const ExperimentConfig& cfg);

struct SummaryRow {
  std::string sweep;
  double value = 0.0;
  Algorithm algorithm = Algorithm::gih;
  std::size_t instances = 0;
  std::size_t failures = 0;
  double mean_served_pairs = 0.0;
  double median_served_pairs = 0.0;
  double mean_drive_s = 0.0;
};

/// Mean and median over the successful rows of each (sweep value, algorithm).
[[nodiscard]] std::vector<SummaryRow> summarize(const std::vector<RunResult>& rows);

void write_results_csv(std::ostream& out, const std::vector<RunResult>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
/// Long format, one line per (sweep value, algorithm), ready for plotting.
void write_plot_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace darpcf
