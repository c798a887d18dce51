#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tierplace/baselines.hpp"
#include "tierplace/log.hpp"
#include "tierplace/scenario_io.hpp"
#include "tierplace/simulator.hpp"

namespace {

using namespace tierplace;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInfeasible = 2;

struct CommonOptions {
  std::string scenario_path;
  std::string policy = "lnodp";
  std::string out_dir;
  std::optional<long> horizon;
  std::optional<long> seed;
  std::string budget_basis;
  std::string queue_unit;
  std::string preset;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_policy = true) {
  cmd->add_option("--scenario", opts.scenario_path, "Scenario JSON file")->required();
  if (with_policy) {
    cmd->add_option("--policy", opts.policy,
                    "lnodp|brute|performance|economic|actgreedy|all");
  }
  cmd->add_option("--out-dir", opts.out_dir, "Directory for result files");
  cmd->add_option("--horizon", opts.horizon, "Override sim.horizon");
  cmd->add_option("--seed", opts.seed, "Override sim.seed");
  cmd->add_option("--budget-basis", opts.budget_basis,
                  "per_execution|per_period override");
  cmd->add_option("--queue-unit", opts.queue_unit, "gb|fraction override");
  cmd->add_option("--preset", opts.preset, "Replace tiers with a preset (table2)");
}

Scenario load_with_overrides(const CommonOptions& opts) {
  Scenario scenario = load_scenario_file(opts.scenario_path);
  if (!opts.preset.empty()) {
    if (opts.preset != "table2") {
      throw Error(Errc::schema_error, "--preset", "unknown preset " + opts.preset);
    }
    scenario.tiers = table2_tiers();
  }
  if (opts.horizon) scenario.horizon = *opts.horizon;
  if (opts.seed) scenario.seed = static_cast<std::uint64_t>(*opts.seed);
  if (!opts.budget_basis.empty()) {
    if (opts.budget_basis == "per_execution") {
      scenario.budget_basis = BudgetBasis::per_execution;
    } else if (opts.budget_basis == "per_period") {
      scenario.budget_basis = BudgetBasis::per_period;
    } else {
      throw Error(Errc::schema_error, "--budget-basis",
                  "expected per_execution or per_period");
    }
  }
  if (!opts.queue_unit.empty()) {
    if (opts.queue_unit == "gb") {
      scenario.queue_unit = QueueUnit::gb;
    } else if (opts.queue_unit == "fraction") {
      scenario.queue_unit = QueueUnit::fraction;
    } else {
      throw Error(Errc::schema_error, "--queue-unit", "expected gb or fraction");
    }
  }
  scenario.validate();
  return scenario;
}

std::vector<Policy> resolve_policies(const std::string& flag) {
  if (flag == "all") {
    return {Policy::lnodp, Policy::brute_force, Policy::performance,
            Policy::economic, Policy::act_greedy};
  }
  auto policy = policy_from_name(flag);
  if (!policy) {
    throw Error(Errc::schema_error, "--policy", "unknown policy " + flag);
  }
  return {*policy};
}

void ensure_out_dir(const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::io_error, out_dir, "cannot create output directory");
}

int cmd_plan(const CommonOptions& opts) {
  Scenario scenario = load_with_overrides(opts);
  std::vector<Policy> policies = resolve_policies(opts.policy);

  if (policies.size() > 1) {
    std::vector<ComparisonRow> rows = compare(scenario, policies);
    std::string csv = render_comparison_csv(scenario, rows);
    std::cout << csv;
    if (!opts.out_dir.empty()) {
      ensure_out_dir(opts.out_dir);
      ResultFiles files = result_paths(opts.out_dir);
      write_file(files.comparison_csv, csv);
      write_file(files.timings_csv, render_timings_csv(rows));
    }
    for (const auto& row : rows) {
      if (row.failed) return kExitInfeasible;
    }
    return kExitOk;
  }

  Problem pb(scenario.tiers, scenario.datasets, scenario.jobs, scenario.env,
             scenario.budget_basis);
  PolicyOutcome outcome =
      plan_once(pb, policies.front(), scenario.planner, scenario.brute_force_cap,
                scenario.brute_force_enforce_constraints);
  std::string summary = render_plan_summary(scenario, outcome, policies.front());
  std::cout << summary;
  if (!opts.out_dir.empty()) {
    ensure_out_dir(opts.out_dir);
    ResultFiles files = result_paths(opts.out_dir);
    write_file(files.summary_json, summary);
  }
  return outcome.infeasible ? kExitInfeasible : kExitOk;
}

int cmd_simulate(const CommonOptions& opts) {
  Scenario scenario = load_with_overrides(opts);
  std::vector<Policy> policies = resolve_policies(opts.policy);
  if (policies.size() > 1) {
    throw Error(Errc::schema_error, "--policy", "simulate takes a single policy");
  }
  SimulationTrace trace = run(scenario, policies.front());
  std::string summary = render_simulation_summary(scenario, trace, policies.front());
  std::cout << summary;
  if (!opts.out_dir.empty()) {
    ensure_out_dir(opts.out_dir);
    ResultFiles files = result_paths(opts.out_dir);
    write_file(files.summary_json, summary);
    write_file(files.trace_csv, render_trace_csv(trace));
    write_file(files.trace_jobs_csv, render_trace_jobs_csv(scenario, trace));
    write_file(files.trace_plan_csv, render_trace_plan_csv(trace));
    write_file(files.trace_queues_csv, render_trace_queues_csv(scenario, trace));
    write_file(files.timings_csv, "policy,w_time,frequency,wall_seconds\n" +
                                      std::string(policy_name(policies.front())) +
                                      ",,," + format_g9(trace.wall_seconds) + "\n");
  }
  return kExitOk;
}

int cmd_compare(const CommonOptions& opts) {
  Scenario scenario = load_with_overrides(opts);
  std::vector<Policy> policies = resolve_policies(opts.policy);
  std::vector<ComparisonRow> rows = compare(scenario, policies);
  std::string csv = render_comparison_csv(scenario, rows);
  std::cout << csv;
  if (!opts.out_dir.empty()) {
    ensure_out_dir(opts.out_dir);
    ResultFiles files = result_paths(opts.out_dir);
    write_file(files.comparison_csv, csv);
    write_file(files.timings_csv, render_timings_csv(rows));
  }
  for (const auto& row : rows) {
    if (row.failed) return kExitInfeasible;
  }
  return kExitOk;
}

int cmd_sweep(const CommonOptions& opts, const std::vector<double>& w_times,
              const std::vector<std::string>& freq_names) {
  Scenario scenario = load_with_overrides(opts);
  std::vector<Policy> policies = resolve_policies(opts.policy);

  std::vector<std::pair<std::string, double>> freqs;
  if (freq_names.empty()) {
    freqs = frequency_presets();
  } else {
    for (const auto& name : freq_names) {
      auto preset = frequency_preset(name);
      if (!preset) {
        throw Error(Errc::schema_error, "--frequencies",
                    "unknown frequency preset " + name);
      }
      freqs.emplace_back(name, *preset);
    }
  }
  std::vector<double> weights = w_times.empty()
                                    ? std::vector<double>{0.0, 0.5, 0.9}
                                    : w_times;

  std::vector<ComparisonRow> rows = sweep(scenario, policies, weights, freqs);
  std::string csv = render_comparison_csv(scenario, rows);
  std::cout << csv;
  if (!opts.out_dir.empty()) {
    ensure_out_dir(opts.out_dir);
    ResultFiles files = result_paths(opts.out_dir);
    write_file(files.comparison_csv, csv);
    write_file(files.timings_csv, render_timings_csv(rows));
  }
  for (const auto& row : rows) {
    if (row.failed) return kExitInfeasible;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tiered-storage data placement planner and simulator"};
  app.require_subcommand(1);

  CommonOptions plan_opts;
  CLI::App* plan = app.add_subcommand("plan", "One-shot static planning");
  add_common(plan, plan_opts);

  CommonOptions sim_opts;
  CLI::App* simulate = app.add_subcommand("simulate", "Slotted simulation run");
  add_common(simulate, sim_opts);

  CommonOptions cmp_opts;
  cmp_opts.policy = "all";
  CLI::App* comparison = app.add_subcommand("compare", "Run several policies");
  add_common(comparison, cmp_opts);

  CommonOptions sweep_opts;
  sweep_opts.policy = "all";
  std::vector<double> sweep_weights;
  std::vector<std::string> sweep_freqs;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Weight x frequency comparison grid");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--wt", sweep_weights, "w_time values (default 0 0.5 0.9)")
      ->delimiter(',');
  sweep_cmd->add_option("--frequencies", sweep_freqs,
                        "frequency presets (default all five)")
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) return cmd_plan(plan_opts);
    if (simulate->parsed()) return cmd_simulate(sim_opts);
    if (comparison->parsed()) return cmd_compare(cmp_opts);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts, sweep_weights, sweep_freqs);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    for (const auto& item : e.items()) {
      std::cerr << "  dataset " << item.dataset << ": " << item.detail << "\n";
    }
    return kExitInfeasible;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
