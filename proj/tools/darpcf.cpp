// Command line front end: generate instances, run one scheduler, run a
// sweep, or check a schedule file.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "darpcf/experiment.hpp"
#include "darpcf/io.hpp"
#include "darpcf/verify.hpp"

namespace {

using namespace darpcf;

struct ParameterFlags {
  std::optional<int> m;
  std::optional<int> q_cap;
  std::optional<double> w_minutes;
  std::optional<double> d_gp_minutes;
  std::optional<double> ride_factor;
  std::optional<double> rho;
  std::optional<std::string> congestion;

  void attach(CLI::App* app) {
    app->add_option("--m", m, "Fleet size");
    app->add_option("--q-cap", q_cap, "Vehicle capacity");
    app->add_option("--w-minutes", w_minutes, "Maximum time window length");
    app->add_option("--d-gp-minutes", d_gp_minutes, "Length of a GP visit");
    app->add_option("--ride-factor", ride_factor, "Maximum ride time as a multiple of the direct time");
    app->add_option("--rho", rho, "Proximity factor for mini-clusters");
    app->add_option("--congestion", congestion, "GP congestion as C:Wmin, e.g. 6:30");
  }

  [[nodiscard]] Overrides overrides() const {
    Overrides o;
    o.vehicles = m;
    o.q_cap = q_cap;
    o.ride_factor = ride_factor;
    o.rho = rho;
    if (w_minutes) o.max_window = static_cast<Seconds>(*w_minutes * 60.0);
    if (d_gp_minutes) o.gp_stay = static_cast<Seconds>(*d_gp_minutes * 60.0);
    if (congestion) {
      const auto colon = congestion->find(':');
      if (colon == std::string::npos) throw ConfigError("--congestion expects C:Wmin");
      o.congestion_limit = std::stoi(congestion->substr(0, colon));
      o.congestion_window = static_cast<Seconds>(std::stod(congestion->substr(colon + 1)) * 60.0);
    }
    return o;
  }
};

struct SolverFlags {
  std::size_t aco_iterations = AcoParams{}.iterations;
  double depot_cost = 1.0;
  std::string init_policy = "longest";
  double fairness_margin = McmaOptions{}.fairness_margin;

  void attach(CLI::App* app) {
    app->add_option("--aco-iterations", aco_iterations, "Ant colony iterations for the cluster tour");
    app->add_option("--depot-cost", depot_cost, "Weight of depot legs when splitting the tour");
    app->add_option("--init-policy", init_policy, "First cluster per vehicle: longest or random")
        ->check(CLI::IsMember({"longest", "random"}));
    app->add_option("--fairness-margin", fairness_margin,
                    "Lead of placed chronic patients over elapsed time before holding back");
  }

  [[nodiscard]] AlgorithmOptions options() const {
    AlgorithmOptions o;
    o.mclih.aco.iterations = aco_iterations;
    o.mclih.depot_multiplier = depot_cost;
    o.mcma.init_policy = init_policy == "random" ? InitPolicy::random : InitPolicy::longest;
    o.mcma.fairness_margin = fairness_margin;
    return o;
  }
};

Range<int> parse_int_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const int v = std::stoi(text);
    return {v, v};
  }
  return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
}

Range<double> parse_double_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const double v = std::stod(text);
    return {v, v};
  }
  return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dial-a-ride scheduling for GP visits with flexible appointments"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic instance");
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  std::string gen_layout = "mixed";
  std::optional<std::string> gen_pairs;
  std::optional<std::string> gen_chronic;
  ParameterFlags gen_params;
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("-o,--output", gen_out, "Instance file")->required();
  gen->add_option("--layout", gen_layout, "Sessions: morning, full or mixed")
      ->check(CLI::IsMember({"morning", "full", "mixed"}));
  gen->add_option("--pairs", gen_pairs, "Patient count or range lo:hi");
  gen->add_option("--chronic", gen_chronic, "Chronic share or range lo:hi");
  gen_params.attach(gen);

  // run
  auto* run = app.add_subcommand("run", "Schedule one instance with one algorithm");
  std::string run_instance;
  std::string run_algo = "mcma";
  std::uint64_t run_seed = 1;
  std::string run_schedule_out;
  bool run_timings = false;
  ParameterFlags run_params;
  SolverFlags run_solver;
  run->add_option("-i,--instance", run_instance, "Instance file")->required();
  run->add_option("--algo", run_algo, "gih, mclih or mcma")
      ->check(CLI::IsMember({"gih", "mclih", "mcma"}));
  run->add_option("--seed", run_seed, "Algorithm seed");
  run->add_option("--schedule-out", run_schedule_out, "Write the schedules as CSV");
  run->add_flag("--timings", run_timings, "Record wall-clock time (output is then not reproducible)");
  run_params.attach(run);
  run_solver.attach(run);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Compare algorithms on generated instances");
  std::string sweep_param = "none";
  std::vector<double> sweep_values;
  std::size_t sweep_instances = 20;
  std::uint64_t sweep_first_seed = 1;
  std::uint64_t sweep_seed = 1;
  std::vector<std::string> sweep_algos{"gih", "mclih", "mcma"};
  std::string sweep_out = ".";
  std::optional<std::string> sweep_pairs;
  unsigned sweep_threads = 0;
  bool sweep_timings = false;
  ParameterFlags sweep_params;
  SolverFlags sweep_solver;
  sweep->add_option("--param", sweep_param, "none, q_cap, ride_factor or rho")
      ->check(CLI::IsMember({"none", "q_cap", "ride_factor", "rho"}));
  sweep->add_option("--values", sweep_values, "Parameter grid (defaults per parameter)");
  sweep->add_option("--instances", sweep_instances, "Number of generated instances");
  sweep->add_option("--first-seed", sweep_first_seed, "Generator seed of the first instance");
  sweep->add_option("--seed", sweep_seed, "Algorithm seed");
  sweep->add_option("--algo", sweep_algos, "Algorithms to compare")
      ->check(CLI::IsMember({"gih", "mclih", "mcma"}));
  sweep->add_option("--out", sweep_out, "Directory for results.csv, summary.csv and plot.csv");
  sweep->add_option("--pairs", sweep_pairs, "Patient count or range lo:hi for every layout");
  sweep->add_option("--threads", sweep_threads, "Worker threads, 0 for one per core");
  sweep->add_flag("--timings", sweep_timings, "Record wall-clock time");
  sweep_params.attach(sweep);
  sweep_solver.attach(sweep);

  // verify
  auto* ver = app.add_subcommand("verify", "Check a schedule file against an instance");
  std::string ver_instance;
  std::string ver_schedule;
  bool ver_baseline = false;
  ver->add_option("-i,--instance", ver_instance, "Instance file")->required();
  ver->add_option("-s,--schedule", ver_schedule, "Schedule CSV")->required();
  ver->add_flag("--baseline", ver_baseline, "Chronic patients keep their booked appointments");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      GeneratorConfig cfg;
      cfg.seed = gen_seed;
      cfg.layout = gen_layout == "morning" ? SessionLayout::morning_only
                   : gen_layout == "full"  ? SessionLayout::full_day
                                           : SessionLayout::mixed;
      if (gen_pairs) cfg.pairs_morning = cfg.pairs_full_day = parse_int_range(*gen_pairs);
      if (gen_chronic) cfg.chronic_fraction = parse_double_range(*gen_chronic);
      auto inst = generate_instance(cfg);
      apply_overrides(inst, gen_params.overrides());
      save_instance(inst, gen_out);
      std::cout << inst.name << ": " << inst.requests.size() << " patients, "
                << inst.chronic_count() << " chronic\n";
      return 0;
    }

    if (*run) {
      auto inst = load_instance(run_instance);
      apply_overrides(inst, run_params.overrides());
      const auto algo = parse_algorithm(run_algo);
      const auto options = run_solver.options();
      const auto start = std::chrono::steady_clock::now();
      const auto result = run_algorithm(inst, algo, run_seed, options);
      const auto elapsed = std::chrono::steady_clock::now() - start;
      if (!run_schedule_out.empty()) save_schedules(result.schedules, run_schedule_out);
      const auto report = verify_schedules(inst, result.schedules, verify_options_for(algo));
      for (const auto& v : report.violations) std::cerr << "violation: " << v << "\n";
      auto row = describe_run(inst, algo, run_seed, result);
      if (run_timings) {
        row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
      }
      write_results_csv(std::cout, {row});
      return report.ok() && row.ok() ? 0 : 2;
    }

    if (*sweep) {
      ExperimentConfig cfg;
      for (std::size_t k = 0; k < sweep_instances; ++k) cfg.generator_seeds.push_back(sweep_first_seed + k);
      if (sweep_pairs) cfg.generator.pairs_morning = cfg.generator.pairs_full_day = parse_int_range(*sweep_pairs);
      cfg.algorithms.clear();
      for (const auto& a : sweep_algos) cfg.algorithms.push_back(parse_algorithm(a));
      cfg.overrides = sweep_params.overrides();
      cfg.sweep = parse_sweep(sweep_param);
      cfg.sweep_values = sweep_values;
      cfg.seed = sweep_seed;
      cfg.options = sweep_solver.options();
      cfg.threads = sweep_threads;
      cfg.timings = sweep_timings;
      const auto rows = run_experiment(cfg);
      const auto summary = summarize(rows);

      std::filesystem::create_directories(sweep_out);
      const std::filesystem::path dir(sweep_out);
      std::ostringstream results, sums, plot;
      write_results_csv(results, rows);
      write_summary_csv(sums, summary);
      write_plot_csv(plot, summary);
      write_file(dir / "results.csv", results.str());
      write_file(dir / "summary.csv", sums.str());
      write_file(dir / "plot.csv", plot.str());
      std::cout << sums.str();

      bool ok = true;
      for (const auto& r : rows) {
        if (!r.ok()) {
          std::cerr << r.instance << " " << to_string(r.algorithm) << ": " << r.failure << "\n";
          ok = false;
        }
      }
      return ok ? 0 : 2;
    }

    if (*ver) {
      const auto inst = load_instance(ver_instance);
      const auto schedules = load_schedules(ver_schedule);
      VerifyOptions options;
      options.fixed_chronic_appointments = ver_baseline;
      const auto report = verify_schedules(inst, schedules, options);
      for (const auto& v : report.violations) std::cout << v << "\n";
      const auto stats = served_count(inst, schedules);
      std::cout << (report.ok() ? "ok" : "infeasible") << ": " << stats.served_pairs
                << " pairs served, " << report.violations.size() << " violations\n";
      return report.ok() ? 0 : 2;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
