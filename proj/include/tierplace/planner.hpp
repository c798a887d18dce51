#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tierplace/lyapunov.hpp"
#include "tierplace/model.hpp"

namespace tierplace {

struct PlannerConfig {
  int max_iterations = 1;    // outer iteration budget (one slot per call)
  int inner_iterations = 3;  // improvement passes per slot
  PenaltyWeight penalty;     // omega
  double grid_step = 0.001;  // step of the numeric feasible-interval scan

  void validate() const;
};

enum class IntervalMode { numeric, closed_form };

// Range of fractions p (mass on the time-side tier j1, remainder on j2) that
// keeps one consumer inside both hard constraints. coef_* are the literal
// closed-form constants, recorded alongside for cross-checking; they are NaN
// when speed_j1 == speed_j2.
struct FeasibleInterval {
  bool empty = true;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t time_tier = 0;
  std::size_t money_tier = 0;
  double coef_a = std::numeric_limits<double>::quiet_NaN();
  double coef_b = std::numeric_limits<double>::quiet_NaN();
  double coef_c = std::numeric_limits<double>::quiet_NaN();
  double coef_d = std::numeric_limits<double>::quiet_NaN();
  bool closed_form_degenerate = false;
};

// Incremental per-job aggregates (transfer seconds, raw storage bill, access
// money, unplaced-input count) for one plan. Keeps planning linear in the
// number of datasets: row changes update only the consumers of that dataset.
class PlanEvaluator {
 public:
  PlanEvaluator(const Problem& pb, const PlacementPlan& plan);

  const Problem& problem() const { return *pb_; }
  const PlacementPlan& plan() const { return plan_; }

  bool job_evaluable(std::size_t k) const { return unplaced_[k] == 0; }
  double job_time(std::size_t k) const;
  double job_money(std::size_t k) const;
  double job_cost(std::size_t k) const;
  // Sum of job_cost over jobs with all inputs placed.
  double partial_total_cost() const;

  // Constraint values for consumer k with dataset d's row replaced by the
  // given candidate; unplaced other inputs contribute nothing.
  double time_with_row(std::size_t k, std::size_t dataset,
                       std::span<const double> row) const;
  double money_with_row(std::size_t k, std::size_t dataset,
                        std::span<const double> row) const;

  // Change in total cost (over d's consumers) if d's row became `row`.
  double delta_cost(std::size_t dataset, std::span<const double> row) const;

  void apply_row(std::size_t dataset, std::span<const double> row);

 private:
  struct Contribution {
    double transfer = 0.0;
    double storage = 0.0;
    double access = 0.0;
  };
  Contribution contribution(std::size_t dataset, std::span<const double> row) const;

  const Problem* pb_;
  PlacementPlan plan_;
  std::vector<double> transfer_;  // per job, placed inputs only
  std::vector<double> storage_;   // per job, raw SP*size*p sum
  std::vector<double> access_;
  std::vector<int> unplaced_;
};

// Storage types that keep every consumer of the dataset inside the hard time
// (first) and money (second) constraint when the dataset is placed fully
// there. Indices into the problem's tier list.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> feasible_type_sets(
    const PlanEvaluator& eval, std::size_t dataset);

FeasibleInterval feasible_interval(const PlanEvaluator& eval, std::size_t dataset,
                                   std::size_t job, std::size_t time_tier,
                                   std::size_t money_tier, IntervalMode mode,
                                   double grid_step);

// Two-tier split (Algorithm-4 style). nullopt when no feasible split exists;
// `detail`, when given, receives a human-readable reason.
std::optional<std::vector<double>> partition_place(
    const PlanEvaluator& eval, std::size_t dataset,
    const std::vector<std::size_t>& time_set,
    const std::vector<std::size_t>& money_set, const PlannerConfig& config,
    std::string* detail = nullptr);

// Single-tier choice with constraint filtering, falling back to partitioning.
std::optional<std::vector<double>> place_dataset(const PlanEvaluator& eval,
                                                 std::size_t dataset,
                                                 const PlannerConfig& config,
                                                 std::string* detail = nullptr);

// Greedy replanning sweep: up to inner_iterations improvement passes over the
// datasets in the given order. Unplaced datasets are adopted from
// place_dataset; re-placements are adopted only on strictly lower cost.
// Throws InfeasibleError when a pending dataset admits no feasible placement.
PlacementPlan near_optimal_planning(const Problem& pb,
                                    const std::vector<std::size_t>& order,
                                    const PlacementPlan& start,
                                    const PlannerConfig& config);

struct StepResult {
  PlacementPlan plan;
  std::vector<std::string> postponed;
};

// One slot of the queue-aware placement loop: sort by pressure, replan, then
// accept each row only where the pressure signal is nonpositive. Queue state
// is read-only here; the caller applies the queue updates afterward.
StepResult lnodp_step(const Problem& pb, const QueueState& state,
                      const PlacementPlan& plan, const PlannerConfig& config);

}  // namespace tierplace
