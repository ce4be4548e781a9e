#include "darpcf/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <ostream>
#include <thread>
#include <tuple>

#include "darpcf/io.hpp"

namespace darpcf {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::gih: return "gih";
    case Algorithm::mclih: return "mclih";
    case Algorithm::mcma: return "mcma";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "gih") return Algorithm::gih;
  if (name == "mclih") return Algorithm::mclih;
  if (name == "mcma") return Algorithm::mcma;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

const char* to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::none: return "none";
    case SweepParameter::q_cap: return "q_cap";
    case SweepParameter::ride_factor: return "ride_factor";
    case SweepParameter::rho: return "rho";
  }
  return "?";
}

SweepParameter parse_sweep(std::string_view name) {
  if (name == "none") return SweepParameter::none;
  if (name == "q_cap" || name == "q") return SweepParameter::q_cap;
  if (name == "ride_factor" || name == "ride-factor") return SweepParameter::ride_factor;
  if (name == "rho") return SweepParameter::rho;
  throw ConfigError("unknown sweep '" + std::string(name) + "'");
}

std::vector<double> default_sweep_values(SweepParameter p) {
  switch (p) {
    case SweepParameter::none: return {0.0};
    case SweepParameter::q_cap: return {3, 4, 5, 6};
    case SweepParameter::ride_factor: return {1.25, 1.5, 1.75, 2.0};
    case SweepParameter::rho: return {1.0, 1.25, 1.5, 1.75, 2.0};
  }
  return {};
}

void apply_overrides(Instance& inst, const Overrides& o) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  if (o.vehicles) {
    require(*o.vehicles >= 1, "fleet size must be at least 1");
    inst.fleet.vehicles = *o.vehicles;
  }
  if (o.q_cap) {
    require(*o.q_cap >= 1, "capacity must be at least 1");
    inst.fleet.capacity = *o.q_cap;
  }
  if (o.ride_factor) {
    require(*o.ride_factor >= 1.0, "ride factor must be at least 1");
    inst.service.ride_factor = *o.ride_factor;
  }
  if (o.rho) {
    require(*o.rho > 0.0, "rho must be positive");
    inst.service.rho = *o.rho;
  }
  if (o.max_window) {
    require(*o.max_window >= 0, "window length must be non-negative");
    inst.service.max_window = *o.max_window;
  }
  if (o.gp_stay) {
    require(*o.gp_stay >= 0, "GP stay must be non-negative");
    inst.service.gp_stay = *o.gp_stay;
  }
  if (o.congestion_limit) {
    require(*o.congestion_limit >= 1, "congestion limit must be at least 1");
    inst.service.congestion_limit = *o.congestion_limit;
  }
  if (o.congestion_window) {
    require(*o.congestion_window > 0, "congestion window must be positive");
    inst.service.congestion_window = *o.congestion_window;
  }
  refresh_derived_fields(inst);
}

SolveResult run_algorithm(const Instance& inst, Algorithm a, std::uint64_t seed,
                          const AlgorithmOptions& options) {
  switch (a) {
    case Algorithm::gih: return run_baseline_gih(inst);
    case Algorithm::mclih: {
      auto o = options.mclih;
      o.seed = seed;
      return run_mclih(inst, o);
    }
    case Algorithm::mcma: {
      auto o = options.mcma;
      o.seed = seed;
      return run_mcma(inst, o);
    }
  }
  return {};
}

VerifyOptions verify_options_for(Algorithm a) {
  VerifyOptions v;
  v.fixed_chronic_appointments = a == Algorithm::gih;
  return v;
}

RunResult describe_run(const Instance& inst, Algorithm a, std::uint64_t seed,
                       const SolveResult& result) {
  RunResult row;
  row.instance = inst.name;
  row.algorithm = a;
  row.q_cap = inst.fleet.capacity;
  row.ride_factor = inst.service.ride_factor;
  row.rho = inst.service.rho;
  row.seed = seed;
  const auto report = verify_schedules(inst, result.schedules, verify_options_for(a));
  if (!report.ok()) {
    row.failure = report.violations.front();
    return row;
  }
  const auto stats = served_count(inst, result.schedules);
  row.served_pairs = stats.served_pairs;
  row.served_rides = stats.served_rides;
  row.rejected_pairs = static_cast<int>(inst.requests.size()) - stats.served_pairs;
  row.total_drive_s = stats.total_drive_time;
  return row;
}

RunResult run_cell(const Instance& inst, Algorithm a, std::uint64_t seed,
                   const AlgorithmOptions& options, bool timings) {
  try {
    const auto start = std::chrono::steady_clock::now();
    const auto result = run_algorithm(inst, a, seed, options);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    auto row = describe_run(inst, a, seed, result);
    if (timings) row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    return row;
  } catch (const std::exception& e) {
    RunResult row;
    row.instance = inst.name;
    row.algorithm = a;
    row.q_cap = inst.fleet.capacity;
    row.ride_factor = inst.service.ride_factor;
    row.rho = inst.service.rho;
    row.seed = seed;
    row.failure = e.what();
    return row;
  }
}

std::vector<RunResult> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.algorithms.empty()) throw ConfigError("no algorithm selected");
  const auto values =
      cfg.sweep_values.empty() ? default_sweep_values(cfg.sweep) : cfg.sweep_values;
  const std::size_t sources =
      cfg.instances.empty() ? cfg.generator_seeds.size() : cfg.instances.size();
  const std::size_t units = sources * values.size();
  const std::size_t per_unit = cfg.algorithms.size();
  std::vector<RunResult> rows(units * per_unit);

  auto run_unit = [&](std::size_t u) {
    const std::size_t src = u / values.size();
    const double value = values[u % values.size()];
    Instance inst;
    if (cfg.instances.empty()) {
      auto g = cfg.generator;
      g.seed = cfg.generator_seeds[src];
      inst = generate_instance(g);
    } else {
      inst = cfg.instances[src];
    }
    auto o = cfg.overrides;
    switch (cfg.sweep) {
      case SweepParameter::none: break;
      case SweepParameter::q_cap: o.q_cap = static_cast<int>(value); break;
      case SweepParameter::ride_factor: o.ride_factor = value; break;
      case SweepParameter::rho: o.rho = value; break;
    }
    apply_overrides(inst, o);
    for (std::size_t k = 0; k < per_unit; ++k) {
      auto& row = rows[u * per_unit + k];
      row = run_cell(inst, cfg.algorithms[k], cfg.seed, cfg.options, cfg.timings);
      if (cfg.sweep != SweepParameter::none) {
        row.sweep = to_string(cfg.sweep);
        row.sweep_value = value;
      }
    }
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t u = next++; u < units; u = next++) {
      try {
        run_unit(u);
      } catch (const std::exception& e) {
        for (std::size_t k = 0; k < per_unit; ++k) {
          auto& row = rows[u * per_unit + k];
          row.algorithm = cfg.algorithms[k];
          row.failure = e.what();
        }
      }
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(units, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }

  // Slots are filled in input order already; the sort only makes the
  // ordering explicit for callers that merge results.
  std::stable_sort(rows.begin(), rows.end(), [](const RunResult& a, const RunResult& b) {
    return std::tie(a.sweep, a.sweep_value) < std::tie(b.sweep, b.sweep_value);
  });
  return rows;
}

std::vector<SummaryRow> summarize(const std::vector<RunResult>& rows) {
  std::map<std::tuple<std::string, double, Algorithm>, std::vector<const RunResult*>> groups;
  for (const auto& r : rows) groups[{r.sweep, r.sweep_value, r.algorithm}].push_back(&r);
  std::vector<SummaryRow> out;
  for (const auto& [key, members] : groups) {
    SummaryRow s;
    std::tie(s.sweep, s.value, s.algorithm) = key;
    std::vector<double> served;
    double drive = 0.0;
    for (const auto* r : members) {
      if (!r->ok()) {
        ++s.failures;
        continue;
      }
      served.push_back(r->served_pairs);
      drive += static_cast<double>(r->total_drive_s);
    }
    s.instances = served.size();
    if (!served.empty()) {
      const auto n = static_cast<double>(served.size());
      for (double v : served) s.mean_served_pairs += v;
      s.mean_served_pairs /= n;
      s.mean_drive_s = drive / n;
      std::sort(served.begin(), served.end());
      const std::size_t mid = served.size() / 2;
      s.median_served_pairs =
          served.size() % 2 ? served[mid] : (served[mid - 1] + served[mid]) / 2.0;
    }
    out.push_back(s);
  }
  return out;
}

void write_results_csv(std::ostream& out, const std::vector<RunResult>& rows) {
  out << "instance,algorithm,q_cap,ride_factor,rho,served_pairs,served_rides,rejected_pairs,"
         "total_drive_s,wall_ms,seed\n";
  for (const auto& r : rows) {
    out << r.instance << ',' << to_string(r.algorithm) << ',' << r.q_cap << ','
        << format_double(r.ride_factor) << ',' << format_double(r.rho) << ',';
    if (r.ok()) {
      out << r.served_pairs << ',' << r.served_rides << ',' << r.rejected_pairs << ','
          << r.total_drive_s;
    } else {
      out << "failed,failed,failed,failed";
    }
    out << ',' << r.wall_ms << ',' << r.seed << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "sweep,value,algorithm,instances,failures,mean_served_pairs,median_served_pairs,"
         "mean_total_drive_s\n";
  for (const auto& s : rows) {
    out << (s.sweep.empty() ? "none" : s.sweep) << ',' << format_double(s.value) << ','
        << to_string(s.algorithm) << ',' << s.instances << ',' << s.failures << ','
        << format_double(s.mean_served_pairs) << ',' << format_double(s.median_served_pairs) << ','
        << format_double(s.mean_drive_s) << '\n';
  }
}

void write_plot_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  auto study = [](const std::string& parameter) {
    if (parameter == "q_cap") return "capacity";
    if (parameter == "ride_factor") return "ride_time";
    if (parameter == "rho") return "proximity";
    return "main";
  };
  out << "sweep,parameter,value,algorithm,mean_served_pairs,median_served_pairs,instances\n";
  for (const auto& s : rows) {
    const std::string name = s.sweep.empty() ? "none" : s.sweep;
    out << study(s.sweep) << ',' << name << ',' << format_double(s.value) << ',' << to_string(s.algorithm)
        << ',' << format_double(s.mean_served_pairs) << ',' << format_double(s.median_served_pairs)
        << ',' << s.instances << '\n';
  }
}

}  // namespace darpcf
