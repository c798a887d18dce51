#include "tierplace/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "tierplace/log.hpp"

namespace tierplace {

namespace {

using Clock = std::chrono::steady_clock;

struct DatasetState {
  DataSet ds;
  bool placed = false;
  std::vector<double> row;
  long last_touch = 0;
};

long execution_period(const Scenario& scenario, const JobProfile& job) {
  double slots = scenario.slots_per_period() / job.frequency;
  return std::max<long>(1, std::lround(slots));
}

double dataset_weight(const Scenario& scenario, const DataSet& ds) {
  return scenario.queue_unit == QueueUnit::gb ? ds.size : 1.0;
}

}  // namespace

void Scenario::validate() const {
  if (horizon < 1) throw Error(Errc::schema_error, "sim.horizon", "must be >= 1");
  if (slot_seconds <= 0.0) {
    throw Error(Errc::schema_error, "sim.slot_seconds", "must be > 0");
  }
  planner.validate();
  // Full cross-reference validation happens in the Problem constructor.
  Problem pb(tiers, datasets, jobs, env, budget_basis);
  (void)pb;
}

SimulationTrace run(const Scenario& scenario, Policy policy) {
  auto wall_start = Clock::now();
  scenario.validate();

  const std::size_t tier_count = scenario.tiers.size();
  const std::size_t job_count = scenario.jobs.size();
  const double omega = scenario.planner.penalty.omega;

  std::vector<DatasetState> population;
  population.reserve(scenario.datasets.size());
  for (const auto& ds : scenario.datasets) {
    population.push_back(DatasetState{ds, false, {}, 0});
  }
  std::vector<JobProfile> jobs = scenario.jobs;
  std::vector<long> next_due(job_count, 0);

  QueueState queues = QueueState::zeros(tier_count, job_count);

  SimulationTrace trace;
  trace.omega = omega;
  trace.slots.reserve(scenario.horizon);

  for (long t = 0; t < scenario.horizon; ++t) {
    SlotRecord rec;
    rec.slot = t;
    rec.arrivals.assign(tier_count, 0.0);
    rec.removals.assign(tier_count, 0.0);
    rec.placed_mass.assign(job_count, 0.0);
    rec.generated.assign(job_count, 0.0);

    // 1. Expire placed data whose most restrictive occupied tier lapsed.
    {
      std::vector<DatasetState> kept;
      kept.reserve(population.size());
      for (auto& st : population) {
        bool expired = false;
        if (st.placed) {
          double min_validity = std::numeric_limits<double>::infinity();
          for (std::size_t j = 0; j < tier_count; ++j) {
            if (st.row[j] > 0.0 && scenario.tiers[j].validity) {
              min_validity = std::min(min_validity, *scenario.tiers[j].validity);
            }
          }
          double idle = static_cast<double>(t - st.last_touch) * scenario.slot_seconds;
          expired = idle > min_validity;
        }
        if (!expired) {
          kept.push_back(std::move(st));
          continue;
        }
        double weight = dataset_weight(scenario, st.ds);
        for (std::size_t j = 0; j < tier_count; ++j) {
          rec.removals[j] += weight * st.row[j];
        }
        rec.expired_datasets.push_back(st.ds.id);
        for (auto& job : jobs) {
          std::erase(job.inputs, st.ds.id);
        }
      }
      population = std::move(kept);
    }

    std::unordered_map<std::string, std::size_t> pop_index;
    for (std::size_t i = 0; i < population.size(); ++i) {
      pop_index[population[i].ds.id] = i;
    }

    // 2. Executions: due jobs run when every input has a standing placement.
    std::vector<bool> executed(job_count, false);
    std::vector<bool> exec_postponed(job_count, false);
    for (std::size_t k = 0; k < job_count; ++k) {
      if (t < next_due[k]) continue;
      bool ready = true;
      for (const auto& id : jobs[k].inputs) {
        auto it = pop_index.find(id);
        if (it == pop_index.end() || !population[it->second].placed) {
          ready = false;
          break;
        }
      }
      if (!ready) {
        exec_postponed[k] = true;  // retried next slot
        continue;
      }
      executed[k] = true;
      next_due[k] = t + execution_period(scenario, jobs[k]);
      for (const auto& id : jobs[k].inputs) {
        population[pop_index[id]].last_touch = t;
      }
      rec.executed_jobs.push_back(jobs[k].id);
    }

    // 3. Executing jobs generate intermediate data, consumed by the parent.
    for (std::size_t k = 0; k < job_count; ++k) {
      if (!executed[k] || jobs[k].intermediate_size <= 0.0) continue;
      DataSet ds;
      ds.id = jobs[k].id + "@t" + std::to_string(t);
      ds.size = jobs[k].intermediate_size;
      ds.consumers = {jobs[k].id};
      ds.origin = DataSet::Origin::intermediate;
      rec.generated[k] += dataset_weight(scenario, ds);
      jobs[k].inputs.push_back(ds.id);
      pop_index[ds.id] = population.size();
      population.push_back(DatasetState{std::move(ds), false, {}, t});
    }

    // 4. Rebuild the problem view and migrate standing placements.
    std::vector<DataSet> datasets;
    datasets.reserve(population.size());
    for (const auto& st : population) datasets.push_back(st.ds);
    Problem pb(scenario.tiers, std::move(datasets), jobs, scenario.env,
               scenario.budget_basis);
    PlacementPlan plan = pb.make_plan();
    for (std::size_t i = 0; i < population.size(); ++i) {
      if (population[i].placed) plan.set_row(i, population[i].row);
    }
    std::vector<bool> pending_before(population.size());
    for (std::size_t i = 0; i < population.size(); ++i) {
      pending_before[i] = !population[i].placed;
    }

    // 5. Invoke the policy and fold its plan into the physical placement.
    PlacementPlan next_plan = pb.make_plan();
    try {
      if (policy == Policy::lnodp) {
        StepResult step = lnodp_step(pb, queues, plan, scenario.planner);
        next_plan = std::move(step.plan);
        rec.postponed_datasets = std::move(step.postponed);
      } else {
        PolicyOutcome outcome =
            plan_once(pb, policy, scenario.planner, scenario.brute_force_cap,
                      scenario.brute_force_enforce_constraints);
        next_plan = std::move(outcome.plan);
        rec.postponed_datasets = std::move(outcome.postponed);
      }
    } catch (const InfeasibleError& e) {
      throw InfeasibleError(e.items(), t);
    }
    for (std::size_t i = 0; i < population.size(); ++i) {
      if (!next_plan.placed(i)) continue;  // postponed keep the standing row
      auto row = next_plan.row(i);
      std::vector<double> new_row(row.begin(), row.end());
      if (!population[i].placed || population[i].row != new_row) {
        population[i].row = std::move(new_row);
        population[i].last_touch = t;  // placement change resets the clock
        population[i].placed = true;
      }
    }

    // 6. Newly placed pending mass feeds the queues.
    for (std::size_t i = 0; i < population.size(); ++i) {
      if (!pending_before[i] || !population[i].placed) continue;
      double weight = dataset_weight(scenario, population[i].ds);
      for (std::size_t j = 0; j < tier_count; ++j) {
        rec.arrivals[j] += weight * population[i].row[j];
      }
      for (std::size_t k : pb.dataset_consumers(i)) {
        rec.placed_mass[k] += weight;
      }
    }

    // Physical plan after this slot's planning, used for costs and the bound.
    PlacementPlan physical = pb.make_plan();
    for (std::size_t i = 0; i < population.size(); ++i) {
      if (population[i].placed) physical.set_row(i, population[i].row);
    }
    for (std::size_t i = 0; i < population.size(); ++i) {
      if (!population[i].placed) continue;
      for (std::size_t j = 0; j < tier_count; ++j) {
        if (population[i].row[j] != 0.0) {
          rec.plan.push_back(PlanEntryRecord{population[i].ds.id, j,
                                             population[i].row[j]});
        }
      }
    }

    // Bound pieces against start-of-slot queues.
    rec.lyapunov_start = lyapunov_value(queues);
    for (std::size_t j = 0; j < tier_count; ++j) {
      rec.sum_backlog_removals += queues.storage_backlog[j] * rec.removals[j];
    }
    for (std::size_t k = 0; k < job_count; ++k) {
      rec.sum_backlog_generated += queues.job_backlog[k] * rec.generated[k];
    }
    for (std::size_t k = 0; k < job_count; ++k) {
      for (std::size_t i : pb.job_inputs(k)) {
        if (!physical.placed(i)) continue;
        for (std::size_t j = 0; j < tier_count; ++j) {
          double p = physical.entry(i, j);
          if (p == 0.0) continue;
          rec.cross_queue_term +=
              (queues.job_backlog[k] - queues.storage_backlog[j]) * p;
          rec.cross_penalty_term += placement_coefficient(pb, i, j, k) * p;
        }
      }
    }

    // 7. Queue recursion.
    for (std::size_t j = 0; j < tier_count; ++j) {
      queues.storage_backlog[j] = update_storage_queue(
          queues.storage_backlog[j], rec.removals[j], rec.arrivals[j]);
    }
    for (std::size_t k = 0; k < job_count; ++k) {
      queues.job_backlog[k] = update_job_queue(queues.job_backlog[k],
                                               rec.placed_mass[k], rec.generated[k]);
    }
    queues.slot = t + 1;
    rec.lyapunov_end = lyapunov_value(queues);
    rec.drift = rec.lyapunov_end - rec.lyapunov_start;
    rec.storage_backlog = queues.storage_backlog;
    rec.job_backlog = queues.job_backlog;

    // 8. Per-job metrics from the physical plan.
    rec.jobs.resize(job_count);
    for (std::size_t k = 0; k < job_count; ++k) {
      JobSlotRecord& jr = rec.jobs[k];
      jr.executed = executed[k];
      jr.execution_postponed = exec_postponed[k];
      bool evaluable = true;
      for (std::size_t i : pb.job_inputs(k)) {
        if (!physical.placed(i)) {
          evaluable = false;
          break;
        }
      }
      jr.evaluable = evaluable;
      if (!evaluable) continue;
      ConstraintReport report = check_constraints(pb, k, physical);
      jr.time_value = report.time_value;
      jr.money_value = report.money_value;
      jr.time_ok = report.time_ok;
      jr.money_ok = report.money_ok;
      jr.cost = job_cost(pb, k, physical);
      rec.total_cost += jr.cost;
    }

    trace.slots.push_back(std::move(rec));
  }

  // Realized drift bounds, then the per-slot bound values.
  DriftBounds bounds;
  for (const auto& rec : trace.slots) {
    for (double a : rec.arrivals) bounds.d_max = std::max(bounds.d_max, a);
    for (double r : rec.removals) bounds.r_max = std::max(bounds.r_max, r);
    for (double p : rec.placed_mass) bounds.data_max = std::max(bounds.data_max, p);
    for (double g : rec.generated) bounds.g_max = std::max(bounds.g_max, g);
  }
  trace.bounds = bounds;
  double penalty_sum = 0.0;
  {
    Problem pb(scenario.tiers, scenario.datasets, scenario.jobs, scenario.env,
               scenario.budget_basis);
    for (std::size_t k = 0; k < pb.job_count(); ++k) {
      penalty_sum += cost_constant(pb, k);
    }
  }
  trace.penalty_constant_sum = penalty_sum;
  double L = drift_constant(bounds, tier_count, job_count);
  for (auto& rec : trace.slots) {
    rec.theorem_rhs = L + omega * penalty_sum + rec.sum_backlog_removals -
                      rec.sum_backlog_generated + rec.cross_queue_term +
                      omega * rec.cross_penalty_term;
  }

  double cost_sum = 0.0;
  double backlog_sum = 0.0;
  for (const auto& rec : trace.slots) {
    cost_sum += rec.total_cost;
    double b = 0.0;
    for (double s : rec.storage_backlog) b += s;
    for (double j : rec.job_backlog) b += j;
    backlog_sum += b;
  }
  trace.summary.time_avg_cost = cost_sum / static_cast<double>(scenario.horizon);
  trace.summary.time_avg_backlog =
      backlog_sum / static_cast<double>(scenario.horizon);
  for (const auto& st : population) {
    if (!st.placed) trace.summary.leftover_pending.push_back(st.ds.id);
  }
  trace.wall_seconds = std::chrono::duration<double>(Clock::now() - wall_start).count();
  return trace;
}

namespace {

ComparisonRow run_comparison_cell(const Scenario& scenario, Policy policy) {
  ComparisonRow row;
  row.policy = std::string(policy_name(policy));
  try {
    SimulationTrace trace = run(scenario, policy);
    const SlotRecord& last = trace.slots.back();
    row.total_cost = trace.summary.time_avg_cost;
    row.wall_seconds = trace.wall_seconds;
    for (std::size_t k = 0; k < scenario.jobs.size(); ++k) {
      const JobSlotRecord& jr = last.jobs[k];
      row.jobs.push_back(ComparisonJobCell{scenario.jobs[k].id, jr.time_value,
                                           jr.money_value, jr.time_ok, jr.money_ok,
                                           jr.evaluable});
    }
  } catch (const Error& e) {
    row.failed = true;
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<ComparisonRow> compare(const Scenario& scenario,
                                   const std::vector<Policy>& policies) {
  std::vector<ComparisonRow> rows;
  rows.reserve(policies.size());
  for (Policy policy : policies) {
    rows.push_back(run_comparison_cell(scenario, policy));
  }
  return rows;
}

std::vector<ComparisonRow> sweep(
    const Scenario& scenario, const std::vector<Policy>& policies,
    const std::vector<double>& w_times,
    const std::vector<std::pair<std::string, double>>& frequencies) {
  std::vector<ComparisonRow> rows;
  for (double w : w_times) {
    for (const auto& [name, value] : frequencies) {
      Scenario cell = scenario;
      for (auto& job : cell.jobs) {
        job.w_time = w;
        job.w_money = 1.0 - w;
        job.frequency = value;
      }
      for (Policy policy : policies) {
        ComparisonRow row = run_comparison_cell(cell, policy);
        row.w_time = w;
        row.frequency = value;
        row.frequency_name = name;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace tierplace
