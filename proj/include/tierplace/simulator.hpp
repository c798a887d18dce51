#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tierplace/baselines.hpp"
#include "tierplace/lyapunov.hpp"
#include "tierplace/model.hpp"
#include "tierplace/planner.hpp"

namespace tierplace {

struct Scenario {
  std::vector<StorageType> tiers;
  std::vector<DataSet> datasets;
  std::vector<JobProfile> jobs;
  EnvironmentParams env;
  PlannerConfig planner;
  long horizon = 1;
  double slot_seconds = 86400.0;
  std::uint64_t seed = 0;
  BudgetBasis budget_basis = BudgetBasis::per_execution;
  QueueUnit queue_unit = QueueUnit::gb;
  std::uint64_t brute_force_cap = 10'000'000;
  bool brute_force_enforce_constraints = false;

  double slots_per_period() const { return kChargingPeriodSeconds / slot_seconds; }
  void validate() const;
};

struct JobSlotRecord {
  bool evaluable = false;  // all inputs placed; cost fields valid
  bool executed = false;
  bool execution_postponed = false;  // was due but blocked on placement
  double time_value = 0.0;
  double money_value = 0.0;  // on the scenario's budget basis
  double cost = 0.0;
  bool time_ok = false;
  bool money_ok = false;
};

struct PlanEntryRecord {
  std::string dataset;
  std::size_t tier = 0;
  double fraction = 0.0;
};

struct SlotRecord {
  long slot = 0;
  std::vector<PlanEntryRecord> plan;  // physical placements after planning
  std::vector<JobSlotRecord> jobs;
  std::vector<double> storage_backlog;  // post-update
  std::vector<double> job_backlog;      // post-update
  std::vector<double> arrivals;         // per tier, newly placed mass
  std::vector<double> removals;         // per tier, expired mass
  std::vector<double> placed_mass;      // per job
  std::vector<double> generated;        // per job
  double lyapunov_start = 0.0;
  double lyapunov_end = 0.0;
  double drift = 0.0;
  double total_cost = 0.0;
  double theorem_rhs = 0.0;  // assembled after the run from DriftBounds
  std::vector<std::string> postponed_datasets;
  std::vector<std::string> expired_datasets;
  std::vector<std::string> executed_jobs;

  // Scalar pieces of the bound, captured against start-of-slot queues.
  double sum_backlog_removals = 0.0;
  double sum_backlog_generated = 0.0;
  double cross_queue_term = 0.0;    // sum (J_k - S_j) p_{i,j}
  double cross_penalty_term = 0.0;  // sum C'_{i,j,k} p_{i,j}
};

struct SimulationSummary {
  double time_avg_cost = 0.0;
  double time_avg_backlog = 0.0;
  std::vector<std::string> leftover_pending;
};

struct SimulationTrace {
  std::vector<SlotRecord> slots;
  DriftBounds bounds;
  double omega = 0.0;
  double penalty_constant_sum = 0.0;  // sum_k C_k
  SimulationSummary summary;
  double wall_seconds = 0.0;
};

SimulationTrace run(const Scenario& scenario, Policy policy);

struct ComparisonJobCell {
  std::string job;
  double time_value = 0.0;
  double money_value = 0.0;
  bool time_ok = false;
  bool money_ok = false;
  bool evaluable = false;
};

struct ComparisonRow {
  std::string policy;
  double w_time = -1.0;      // -1 when not part of a sweep
  double frequency = -1.0;   // executions per charging period; -1 outside sweeps
  std::string frequency_name;
  double total_cost = 0.0;
  bool failed = false;
  std::string error;
  std::vector<ComparisonJobCell> jobs;
  double wall_seconds = 0.0;
};

// Runs every policy on the identical scenario; failures are recorded per row.
std::vector<ComparisonRow> compare(const Scenario& scenario,
                                   const std::vector<Policy>& policies);

// Grid of (w_time, frequency) cells; each cell rewrites every job's weights
// and frequency, then compares the policies.
std::vector<ComparisonRow> sweep(
    const Scenario& scenario, const std::vector<Policy>& policies,
    const std::vector<double>& w_times,
    const std::vector<std::pair<std::string, double>>& frequencies);

}  // namespace tierplace
