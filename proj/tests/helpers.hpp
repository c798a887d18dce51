#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tierplace/model.hpp"
#include "tierplace/simulator.hpp"

namespace tierplace::testing {

// Deterministic generator with platform-independent output (splitmix64);
// std distributions are implementation-defined, so sampling is hand-rolled.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive bounds.
  long uniform_int(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

inline EnvironmentParams default_env() {
  return EnvironmentParams{10.0, 100.0, 1e-4};
}

// Independent recomputation of the cost formulas, written directly against
// the raw structs. Plans are given as dataset-id -> per-tier fractions.
struct Oracle {
  std::vector<StorageType> tiers;
  std::vector<DataSet> datasets;
  std::vector<JobProfile> jobs;
  EnvironmentParams env;
  bool per_period_budget = false;

  const DataSet& dataset(const std::string& id) const {
    for (const auto& d : datasets) {
      if (d.id == id) return d;
    }
    throw std::runtime_error("oracle: unknown dataset " + id);
  }

  double workload_frequency_sum() const {
    double s = 0.0;
    for (const auto& j : jobs) s += j.workload * j.frequency;
    return s;
  }

  double exec_time(const JobProfile& job) const {
    return (job.alpha / job.nodes + (1.0 - job.alpha)) * job.workload /
           env.compute_speed;
  }

  double job_time(const JobProfile& job,
                  const std::map<std::string, std::vector<double>>& plan) const {
    double transfer = 0.0;
    for (const auto& id : job.inputs) {
      const DataSet& d = dataset(id);
      const auto& row = plan.at(id);
      for (std::size_t j = 0; j < tiers.size(); ++j) {
        transfer += d.size / tiers[j].speed * row[j];
      }
    }
    return job.nodes * env.init_time_per_node + transfer + exec_time(job);
  }

  double job_money(const JobProfile& job,
                   const std::map<std::string, std::vector<double>>& plan) const {
    double transfer = 0.0;
    double storage = 0.0;
    double access = 0.0;
    for (const auto& id : job.inputs) {
      const DataSet& d = dataset(id);
      const auto& row = plan.at(id);
      for (std::size_t j = 0; j < tiers.size(); ++j) {
        transfer += d.size / tiers[j].speed * row[j];
        storage += tiers[j].storage_price * d.size * row[j];
        access += tiers[j].read_price * d.size * row[j];
      }
    }
    return env.vm_price * job.nodes * (transfer + exec_time(job)) +
           job.workload / workload_frequency_sum() * storage + access;
  }

  double job_cost(const JobProfile& job,
                  const std::map<std::string, std::vector<double>>& plan) const {
    return job.w_money * (job_money(job, plan) / job.desired_money) * job.frequency +
           job.w_time * (job_time(job, plan) / job.desired_time);
  }

  double total_cost(const std::map<std::string, std::vector<double>>& plan) const {
    double s = 0.0;
    for (const auto& job : jobs) s += job_cost(job, plan);
    return s;
  }

  bool time_ok(const JobProfile& job,
               const std::map<std::string, std::vector<double>>& plan) const {
    return job_time(job, plan) <= job.time_deadline + 1e-9;
  }

  bool money_ok(const JobProfile& job,
                const std::map<std::string, std::vector<double>>& plan) const {
    double m = job_money(job, plan);
    if (per_period_budget) m *= job.frequency;
    return m <= job.money_budget + 1e-9;
  }
};

inline Oracle oracle_of(const Problem& pb) {
  return Oracle{pb.tiers(), pb.datasets(), pb.jobs(), pb.env(),
                pb.budget_basis() == BudgetBasis::per_period};
}

inline std::map<std::string, std::vector<double>> plan_map(const Problem& pb,
                                                           const PlacementPlan& plan) {
  std::map<std::string, std::vector<double>> out;
  for (std::size_t i = 0; i < plan.dataset_count(); ++i) {
    auto row = plan.row(i);
    out[plan.dataset_ids()[i]] = {row.begin(), row.end()};
  }
  return out;
}

inline DataSet make_dataset(std::string id, double size) {
  DataSet d;
  d.id = std::move(id);
  d.size = size;
  return d;
}

inline JobProfile make_job(std::string id, std::vector<std::string> inputs,
                           double w_time = 0.5) {
  JobProfile j;
  j.id = std::move(id);
  j.workload = 3000.0;
  j.alpha = 0.5;
  j.nodes = 3;
  j.frequency = 1.0;
  j.desired_time = 1200.0;
  j.desired_money = 1.0;
  j.time_deadline = 1e12;
  j.money_budget = 1e12;
  j.w_time = w_time;
  j.w_money = 1.0 - w_time;
  j.inputs = std::move(inputs);
  return j;
}

// Random loose-constraint instance on the four-tier pricing preset.
inline Problem random_problem(Rng& rng, long max_datasets = 6, long max_jobs = 5,
                              BudgetBasis basis = BudgetBasis::per_execution) {
  std::vector<StorageType> tiers = {
      {"standard", "Standard", 0.0155, 0.0, 0.1, std::nullopt},
      {"low_frequency", "Low frequency", 0.0113, 0.0042, 0.05, std::nullopt},
      {"cold", "Cold", 0.0045, 0.0085, 0.02, std::nullopt},
      {"archive", "Archive", 0.015, 0.12, 0.005, std::nullopt},
  };
  long m = rng.uniform_int(1, max_datasets);
  long k = rng.uniform_int(1, max_jobs);
  std::vector<DataSet> datasets;
  for (long i = 0; i < m; ++i) {
    datasets.push_back(make_dataset("d" + std::to_string(i), rng.uniform(0.5, 50.0)));
  }
  static const double freqs[] = {30.0, 2.0, 1.0, 1.0 / 3.0, 1.0 / 12.0};
  std::vector<JobProfile> jobs;
  for (long j = 0; j < k; ++j) {
    JobProfile job;
    job.id = "job" + std::to_string(j);
    job.workload = rng.uniform(100.0, 50000.0);
    job.alpha = rng.uniform(0.0, 1.0);
    job.nodes = static_cast<int>(rng.uniform_int(1, 8));
    job.frequency = freqs[rng.uniform_int(0, 4)];
    job.desired_time = rng.uniform(100.0, 5000.0);
    job.desired_money = rng.uniform(0.1, 10.0);
    job.time_deadline = 1e12;
    job.money_budget = 1e12;
    job.w_time = rng.uniform(0.0, 1.0);
    job.w_money = 1.0 - job.w_time;
    for (long i = 0; i < m; ++i) {
      if (rng.uniform() < 0.6) job.inputs.push_back("d" + std::to_string(i));
    }
    if (job.inputs.empty()) {
      job.inputs.push_back("d" + std::to_string(rng.uniform_int(0, m - 1)));
    }
    jobs.push_back(std::move(job));
  }
  // Every dataset needs a consumer.
  for (long i = 0; i < m; ++i) {
    std::string id = "d" + std::to_string(i);
    bool used = false;
    for (const auto& job : jobs) {
      for (const auto& input : job.inputs) {
        if (input == id) {
          used = true;
          break;
        }
      }
      if (used) break;
    }
    if (!used) jobs[rng.uniform_int(0, k - 1)].inputs.push_back(id);
  }
  EnvironmentParams env{rng.uniform(1.0, 20.0), rng.uniform(10.0, 200.0),
                        rng.uniform(1e-5, 1e-3)};
  return Problem(std::move(tiers), std::move(datasets), std::move(jobs), env, basis);
}

}  // namespace tierplace::testing
