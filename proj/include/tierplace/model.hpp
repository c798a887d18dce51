#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tierplace/errors.hpp"

namespace tierplace {

// Absolute tolerance for comparisons on normalized quantities.
inline constexpr double kEps = 1e-9;

// Charging period for storage prices and execution frequencies: one month.
inline constexpr double kChargingPeriodSeconds = 30.0 * 86400.0;

// One cloud storage class. storage_price is currency per GB per charging
// period, read_price currency per GB per read, speed GB/s. validity is the
// number of seconds unaccessed data survives; absent means it never expires.
struct StorageType {
  std::string id;
  std::string name;
  double storage_price = 0.0;
  double read_price = 0.0;
  double speed = 0.0;
  std::optional<double> validity;
};

struct DataSet {
  enum class Origin { input, intermediate };

  std::string id;
  double size = 0.0;  // GB
  std::vector<std::string> consumers;
  Origin origin = Origin::input;
};

struct JobProfile {
  std::string id;
  double workload = 0.0;  // GFLOP
  double alpha = 0.0;     // parallel fraction
  int nodes = 1;
  double frequency = 1.0;  // executions per charging period
  double desired_time = 1.0;
  double desired_money = 1.0;
  double time_deadline = 0.0;
  double money_budget = 0.0;
  double w_time = 0.0;
  double w_money = 1.0;
  std::vector<std::string> inputs;
  double intermediate_size = 0.0;  // GB generated per execution
};

struct EnvironmentParams {
  double init_time_per_node = 0.0;  // seconds per node
  double compute_speed = 1.0;       // GFLOPS per node
  double vm_price = 0.0;            // currency per node-second
};

enum class BudgetBasis { per_execution, per_period };
enum class QueueUnit { gb, fraction };

// Execution-frequency presets, in executions per charging period.
std::optional<double> frequency_preset(std::string_view name);
const std::vector<std::pair<std::string, double>>& frequency_presets();

void validate(const StorageType& tier, const std::string& path);
void validate(const DataSet& ds, const std::string& path);
void validate(const JobProfile& job, const std::string& path);
void validate(const EnvironmentParams& env, const std::string& path);

// Fractional placement matrix. Rows are aligned with a Problem's dataset
// order; a row is either absent (unplaced) or holds one fraction per tier.
class PlacementPlan {
 public:
  PlacementPlan() = default;
  PlacementPlan(std::vector<std::string> dataset_ids, std::size_t tier_count);

  std::size_t dataset_count() const { return ids_.size(); }
  std::size_t tier_count() const { return tiers_; }
  const std::vector<std::string>& dataset_ids() const { return ids_; }

  bool has_row(std::size_t i) const { return has_[i] != 0; }
  std::span<const double> row(std::size_t i) const;
  void set_row(std::size_t i, std::span<const double> values);
  void clear_row(std::size_t i);
  double entry(std::size_t i, std::size_t j) const { return p_[i * tiers_ + j]; }

  double row_sum(std::size_t i) const;
  // True iff the row is present and sums to 1 within kEps.
  bool placed(std::size_t i) const;

  std::optional<std::size_t> index_of(const std::string& dataset_id) const;

  // Throws schema_error if any entry is outside [0,1] or a present row does
  // not sum to 0 or 1 within kEps.
  void validate() const;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t tiers_ = 0;
  std::vector<double> p_;
  std::vector<unsigned char> has_;
};

// Validated, index-resolved view of one placement instance. All cost and
// constraint operations work against a Problem.
class Problem {
 public:
  Problem(std::vector<StorageType> tiers, std::vector<DataSet> datasets,
          std::vector<JobProfile> jobs, EnvironmentParams env,
          BudgetBasis budget_basis = BudgetBasis::per_execution);

  const std::vector<StorageType>& tiers() const { return tiers_; }
  const std::vector<DataSet>& datasets() const { return datasets_; }
  const std::vector<JobProfile>& jobs() const { return jobs_; }
  const EnvironmentParams& env() const { return env_; }
  BudgetBasis budget_basis() const { return budget_basis_; }

  std::size_t tier_count() const { return tiers_.size(); }
  std::size_t dataset_count() const { return datasets_.size(); }
  std::size_t job_count() const { return jobs_.size(); }

  const std::vector<std::size_t>& job_inputs(std::size_t k) const { return job_inputs_[k]; }
  const std::vector<std::size_t>& dataset_consumers(std::size_t i) const { return consumers_[i]; }

  // Sum over jobs of workload * frequency; denominator of the storage
  // allocation share.
  double workload_frequency_sum() const { return workload_frequency_sum_; }
  double allocation_share(std::size_t k) const;  // WL_k / sum_l WL_l f_l

  std::size_t job_index(const std::string& id) const;
  std::size_t dataset_index(const std::string& id) const;

  PlacementPlan make_plan() const;

 private:
  std::vector<StorageType> tiers_;
  std::vector<DataSet> datasets_;
  std::vector<JobProfile> jobs_;
  EnvironmentParams env_;
  BudgetBasis budget_basis_;
  std::vector<std::vector<std::size_t>> job_inputs_;
  std::vector<std::vector<std::size_t>> consumers_;
  std::unordered_map<std::string, std::size_t> job_index_;
  std::unordered_map<std::string, std::size_t> dataset_index_;
  double workload_frequency_sum_ = 0.0;
};

struct ConstraintReport {
  bool time_ok = false;
  bool money_ok = false;
  double time_value = 0.0;
  double money_value = 0.0;  // on the configured budget basis
};

// Parallel-fraction estimate from two timed runs on m1 and m2 nodes.
double estimate_alpha(double t1, double m1, double t2, double m2);

double execution_time(const JobProfile& job, const EnvironmentParams& env);
double transfer_time(const Problem& pb, std::size_t job, const PlacementPlan& plan);
double job_time(const Problem& pb, std::size_t job, const PlacementPlan& plan);
double exec_money(const Problem& pb, std::size_t job, const PlacementPlan& plan);
double storage_money(const Problem& pb, std::size_t job, const PlacementPlan& plan);
double access_money(const Problem& pb, std::size_t job, const PlacementPlan& plan);
double job_money(const Problem& pb, std::size_t job, const PlacementPlan& plan);
double job_cost(const Problem& pb, std::size_t job, const PlacementPlan& plan);
double total_cost(const Problem& pb, const PlacementPlan& plan);

ConstraintReport check_constraints(const Problem& pb, std::size_t job,
                                   const PlacementPlan& plan);

}  // namespace tierplace
