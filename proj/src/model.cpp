#include "tierplace/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tierplace {

namespace {

[[noreturn]] void fail(Errc code, const std::string& path, const std::string& msg) {
  throw Error(code, path, msg);
}

void require(bool ok, const std::string& path, const std::string& msg) {
  if (!ok) fail(Errc::schema_error, path, msg);
}

// Order-insensitive summation: sums depending on a job *set* must not change
// with the order the jobs are listed in.
double stable_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += t;
  return sum;
}

}  // namespace

const std::vector<std::pair<std::string, double>>& frequency_presets() {
  static const std::vector<std::pair<std::string, double>> presets = {
      {"daily", 30.0},
      {"semimonthly", 2.0},
      {"monthly", 1.0},
      {"quarterly", 1.0 / 3.0},
      {"yearly", 1.0 / 12.0},
  };
  return presets;
}

std::optional<double> frequency_preset(std::string_view name) {
  for (const auto& [label, value] : frequency_presets()) {
    if (label == name) return value;
  }
  return std::nullopt;
}

void validate(const StorageType& tier, const std::string& path) {
  require(!tier.id.empty(), path + ".id", "tier id must be nonempty");
  require(tier.storage_price >= 0.0, path + ".storage_price", "must be >= 0");
  require(tier.read_price >= 0.0, path + ".read_price", "must be >= 0");
  require(tier.speed > 0.0, path + ".speed", "must be > 0");
  if (tier.validity) {
    require(*tier.validity > 0.0, path + ".validity", "must be > 0 when present");
  }
}

void validate(const DataSet& ds, const std::string& path) {
  require(!ds.id.empty(), path + ".id", "dataset id must be nonempty");
  require(ds.size > 0.0, path + ".size", "must be > 0");
  require(!ds.consumers.empty(), path + ".consumers",
          "dataset has no consuming job");
}

void validate(const JobProfile& job, const std::string& path) {
  require(!job.id.empty(), path + ".id", "job id must be nonempty");
  require(job.alpha >= 0.0 && job.alpha <= 1.0, path + ".alpha", "must be in [0,1]");
  require(job.nodes >= 1, path + ".nodes", "must be >= 1");
  require(job.frequency > 0.0, path + ".frequency", "must be > 0");
  require(job.desired_time > 0.0, path + ".desired_time", "must be > 0");
  require(job.desired_money > 0.0, path + ".desired_money", "must be > 0");
  require(job.w_time >= 0.0 && job.w_time <= 1.0, path + ".w_time", "must be in [0,1]");
  require(job.w_money >= 0.0 && job.w_money <= 1.0, path + ".w_money", "must be in [0,1]");
  require(std::abs(job.w_time + job.w_money - 1.0) <= kEps, path + ".w_time",
          "w_time + w_money must equal 1");
  require(job.workload >= 0.0, path + ".workload", "must be >= 0");
  require(job.intermediate_size >= 0.0, path + ".intermediate_size", "must be >= 0");
}

void validate(const EnvironmentParams& env, const std::string& path) {
  require(env.init_time_per_node >= 0.0, path + ".init_time_per_node",
          "must be >= 0");
  require(env.compute_speed > 0.0, path + ".compute_speed", "must be > 0");
  require(env.vm_price >= 0.0, path + ".vm_price", "must be >= 0");
}

PlacementPlan::PlacementPlan(std::vector<std::string> dataset_ids, std::size_t tier_count)
    : ids_(std::move(dataset_ids)),
      tiers_(tier_count),
      p_(ids_.size() * tier_count, 0.0),
      has_(ids_.size(), 0) {
  for (std::size_t i = 0; i < ids_.size(); ++i) index_[ids_[i]] = i;
}

std::span<const double> PlacementPlan::row(std::size_t i) const {
  return {p_.data() + i * tiers_, tiers_};
}

void PlacementPlan::set_row(std::size_t i, std::span<const double> values) {
  std::copy(values.begin(), values.end(), p_.begin() + i * tiers_);
  has_[i] = 1;
}

void PlacementPlan::clear_row(std::size_t i) {
  std::fill_n(p_.begin() + i * tiers_, tiers_, 0.0);
  has_[i] = 0;
}

double PlacementPlan::row_sum(std::size_t i) const {
  double s = 0.0;
  for (std::size_t j = 0; j < tiers_; ++j) s += entry(i, j);
  return s;
}

bool PlacementPlan::placed(std::size_t i) const {
  return has_row(i) && std::abs(row_sum(i) - 1.0) <= kEps;
}

std::optional<std::size_t> PlacementPlan::index_of(const std::string& dataset_id) const {
  auto it = index_.find(dataset_id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void PlacementPlan::validate() const {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    for (std::size_t j = 0; j < tiers_; ++j) {
      double v = entry(i, j);
      if (v < -kEps || v > 1.0 + kEps) {
        fail(Errc::schema_error, "plan[" + ids_[i] + "]", "entry outside [0,1]");
      }
    }
    double s = row_sum(i);
    if (std::abs(s) > kEps && std::abs(s - 1.0) > kEps) {
      fail(Errc::schema_error, "plan[" + ids_[i] + "]",
           "row sum must be 0 or 1");
    }
  }
}

Problem::Problem(std::vector<StorageType> tiers, std::vector<DataSet> datasets,
                 std::vector<JobProfile> jobs, EnvironmentParams env,
                 BudgetBasis budget_basis)
    : tiers_(std::move(tiers)),
      datasets_(std::move(datasets)),
      jobs_(std::move(jobs)),
      env_(env),
      budget_basis_(budget_basis) {
  for (std::size_t j = 0; j < tiers_.size(); ++j) {
    tierplace::validate(tiers_[j], "tiers[" + std::to_string(j) + "]");
    for (std::size_t o = 0; o < j; ++o) {
      if (tiers_[o].id == tiers_[j].id) {
        fail(Errc::schema_error, "tiers[" + std::to_string(j) + "].id",
             "duplicate tier id " + tiers_[j].id);
      }
    }
  }
  for (std::size_t k = 0; k < jobs_.size(); ++k) {
    tierplace::validate(jobs_[k], "jobs[" + std::to_string(k) + "]");
    if (!job_index_.emplace(jobs_[k].id, k).second) {
      fail(Errc::schema_error, "jobs[" + std::to_string(k) + "].id",
           "duplicate job id " + jobs_[k].id);
    }
  }
  for (std::size_t i = 0; i < datasets_.size(); ++i) {
    if (!dataset_index_.emplace(datasets_[i].id, i).second) {
      fail(Errc::schema_error, "datasets[" + std::to_string(i) + "].id",
           "duplicate dataset id " + datasets_[i].id);
    }
  }
  tierplace::validate(env_, "env");

  job_inputs_.resize(jobs_.size());
  consumers_.resize(datasets_.size());
  for (std::size_t k = 0; k < jobs_.size(); ++k) {
    for (const auto& id : jobs_[k].inputs) {
      auto it = dataset_index_.find(id);
      if (it == dataset_index_.end()) {
        fail(Errc::dangling_reference, "jobs[" + std::to_string(k) + "].inputs",
             "unknown dataset " + id);
      }
      job_inputs_[k].push_back(it->second);
      consumers_[it->second].push_back(k);
    }
  }
  for (std::size_t i = 0; i < datasets_.size(); ++i) {
    // Consumer sets are derived from job input lists; they are the
    // authoritative Jobs_i.
    datasets_[i].consumers.clear();
    for (std::size_t k : consumers_[i]) datasets_[i].consumers.push_back(jobs_[k].id);
    tierplace::validate(datasets_[i], "datasets[" + std::to_string(i) + "]");
  }
  std::vector<double> terms;
  terms.reserve(jobs_.size());
  for (const auto& job : jobs_) terms.push_back(job.workload * job.frequency);
  workload_frequency_sum_ = stable_sum(std::move(terms));
}

double Problem::allocation_share(std::size_t k) const {
  if (workload_frequency_sum_ <= 0.0) {
    fail(Errc::zero_workload_system, "jobs",
         "sum of workload*frequency over all jobs is zero");
  }
  return jobs_[k].workload / workload_frequency_sum_;
}

std::size_t Problem::job_index(const std::string& id) const {
  auto it = job_index_.find(id);
  if (it == job_index_.end()) fail(Errc::dangling_reference, "jobs", "unknown job " + id);
  return it->second;
}

std::size_t Problem::dataset_index(const std::string& id) const {
  auto it = dataset_index_.find(id);
  if (it == dataset_index_.end()) {
    fail(Errc::dangling_reference, "datasets", "unknown dataset " + id);
  }
  return it->second;
}

PlacementPlan Problem::make_plan() const {
  std::vector<std::string> ids;
  ids.reserve(datasets_.size());
  for (const auto& d : datasets_) ids.push_back(d.id);
  return PlacementPlan(std::move(ids), tiers_.size());
}

double estimate_alpha(double t1, double m1, double t2, double m2) {
  if (t1 <= 0.0 || t2 <= 0.0) {
    fail(Errc::degenerate_measurement, "estimate_alpha", "run times must be > 0");
  }
  if (m1 == m2) {
    fail(Errc::degenerate_measurement, "estimate_alpha",
         "node counts must differ");
  }
  double numerator = m2 * m1 * (t2 - t1);
  double denominator = m2 * m1 * (t2 - t1) + m1 * t1 - m2 * t2;
  if (denominator == 0.0) {
    fail(Errc::degenerate_measurement, "estimate_alpha", "zero denominator");
  }
  double alpha = numerator / denominator;
  if (alpha < -kEps || alpha > 1.0 + kEps) {
    std::ostringstream msg;
    msg << "estimated fraction " << alpha << " outside [0,1]";
    fail(Errc::degenerate_measurement, "estimate_alpha", msg.str());
  }
  return std::clamp(alpha, 0.0, 1.0);
}

double execution_time(const JobProfile& job, const EnvironmentParams& env) {
  return (job.alpha / job.nodes + (1.0 - job.alpha)) * job.workload /
         env.compute_speed;
}

namespace {

std::size_t require_placed_row(const Problem& pb, std::size_t job,
                               const PlacementPlan& plan, std::size_t dataset) {
  auto idx = plan.index_of(pb.datasets()[dataset].id);
  if (!idx || (!plan.has_row(*idx)) || plan.row_sum(*idx) <= kEps) {
    fail(Errc::missing_placement, "jobs[" + pb.jobs()[job].id + "]",
         "input " + pb.datasets()[dataset].id + " has no placement; job postponed");
  }
  return *idx;
}

}  // namespace

double transfer_time(const Problem& pb, std::size_t job, const PlacementPlan& plan) {
  double total = 0.0;
  for (std::size_t i : pb.job_inputs(job)) {
    std::size_t r = require_placed_row(pb, job, plan, i);
    const double size = pb.datasets()[i].size;
    for (std::size_t j = 0; j < pb.tier_count(); ++j) {
      double p = plan.entry(r, j);
      if (p != 0.0) total += size / pb.tiers()[j].speed * p;
    }
  }
  return total;
}

double job_time(const Problem& pb, std::size_t job, const PlacementPlan& plan) {
  const JobProfile& jp = pb.jobs()[job];
  double init = jp.nodes * pb.env().init_time_per_node;
  return init + transfer_time(pb, job, plan) + execution_time(jp, pb.env());
}

double exec_money(const Problem& pb, std::size_t job, const PlacementPlan& plan) {
  const JobProfile& jp = pb.jobs()[job];
  double init = jp.nodes * pb.env().init_time_per_node;
  return pb.env().vm_price * jp.nodes * (job_time(pb, job, plan) - init);
}

double storage_money(const Problem& pb, std::size_t job, const PlacementPlan& plan) {
  double stored = 0.0;
  for (std::size_t i : pb.job_inputs(job)) {
    std::size_t r = require_placed_row(pb, job, plan, i);
    const double size = pb.datasets()[i].size;
    for (std::size_t j = 0; j < pb.tier_count(); ++j) {
      double p = plan.entry(r, j);
      if (p != 0.0) stored += pb.tiers()[j].storage_price * size * p;
    }
  }
  return pb.allocation_share(job) * stored;
}

double access_money(const Problem& pb, std::size_t job, const PlacementPlan& plan) {
  double total = 0.0;
  for (std::size_t i : pb.job_inputs(job)) {
    std::size_t r = require_placed_row(pb, job, plan, i);
    const double size = pb.datasets()[i].size;
    for (std::size_t j = 0; j < pb.tier_count(); ++j) {
      double p = plan.entry(r, j);
      if (p != 0.0) total += pb.tiers()[j].read_price * size * p;
    }
  }
  return total;
}

double job_money(const Problem& pb, std::size_t job, const PlacementPlan& plan) {
  return exec_money(pb, job, plan) + storage_money(pb, job, plan) +
         access_money(pb, job, plan);
}

double job_cost(const Problem& pb, std::size_t job, const PlacementPlan& plan) {
  const JobProfile& jp = pb.jobs()[job];
  // The frequency multiplies only the monetary term; the time term is
  // per-execution.
  return jp.w_money * (job_money(pb, job, plan) / jp.desired_money) * jp.frequency +
         jp.w_time * (job_time(pb, job, plan) / jp.desired_time);
}

double total_cost(const Problem& pb, const PlacementPlan& plan) {
  std::vector<double> terms;
  terms.reserve(pb.job_count());
  for (std::size_t k = 0; k < pb.job_count(); ++k) {
    terms.push_back(job_cost(pb, k, plan));
  }
  return stable_sum(std::move(terms));
}

ConstraintReport check_constraints(const Problem& pb, std::size_t job,
                                   const PlacementPlan& plan) {
  const JobProfile& jp = pb.jobs()[job];
  ConstraintReport report;
  report.time_value = job_time(pb, job, plan);
  double money = job_money(pb, job, plan);
  report.money_value =
      pb.budget_basis() == BudgetBasis::per_period ? jp.frequency * money : money;
  report.time_ok = report.time_value <= jp.time_deadline + kEps;
  report.money_ok = report.money_value <= jp.money_budget + kEps;
  return report;
}

}  // namespace tierplace
