#include "tierplace/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace tierplace {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Fills cost/constraint fields from the final plan. Jobs with unplaced
// inputs are skipped in the total and flagged via outcome.postponed.
void finalize(const Problem& pb, PolicyOutcome& outcome) {
  outcome.per_job.clear();
  outcome.total_cost = 0.0;
  std::vector<bool> postponed_dataset(pb.dataset_count(), false);
  for (std::size_t i = 0; i < pb.dataset_count(); ++i) {
    auto idx = outcome.plan.index_of(pb.datasets()[i].id);
    if (!idx || !outcome.plan.placed(*idx)) postponed_dataset[i] = true;
  }
  for (std::size_t k = 0; k < pb.job_count(); ++k) {
    bool evaluable = true;
    for (std::size_t i : pb.job_inputs(k)) {
      if (postponed_dataset[i]) {
        evaluable = false;
        break;
      }
    }
    if (!evaluable) {
      outcome.per_job.push_back(ConstraintReport{});
      continue;
    }
    outcome.per_job.push_back(check_constraints(pb, k, outcome.plan));
    outcome.total_cost += job_cost(pb, k, outcome.plan);
  }
  for (std::size_t i = 0; i < pb.dataset_count(); ++i) {
    if (postponed_dataset[i]) outcome.postponed.push_back(pb.datasets()[i].id);
  }
}

PolicyOutcome uniform_tier_outcome(const Problem& pb, std::size_t tier) {
  auto start = Clock::now();
  PolicyOutcome outcome{pb.make_plan()};
  std::vector<double> row(pb.tier_count(), 0.0);
  row[tier] = 1.0;
  for (std::size_t i = 0; i < pb.dataset_count(); ++i) outcome.plan.set_row(i, row);
  finalize(pb, outcome);
  outcome.wall_seconds = seconds_since(start);
  return outcome;
}

}  // namespace

std::optional<Policy> policy_from_name(std::string_view name) {
  if (name == "lnodp") return Policy::lnodp;
  if (name == "brute") return Policy::brute_force;
  if (name == "performance") return Policy::performance;
  if (name == "economic") return Policy::economic;
  if (name == "actgreedy") return Policy::act_greedy;
  return std::nullopt;
}

std::string_view policy_name(Policy policy) {
  switch (policy) {
    case Policy::lnodp: return "lnodp";
    case Policy::brute_force: return "brute";
    case Policy::performance: return "performance";
    case Policy::economic: return "economic";
    case Policy::act_greedy: return "actgreedy";
  }
  return "unknown";
}

PolicyOutcome brute_force(const Problem& pb, std::uint64_t cap,
                          bool enforce_constraints) {
  auto start = Clock::now();
  const std::size_t m = pb.dataset_count();
  const std::size_t n = pb.tier_count();

  PolicyOutcome outcome{pb.make_plan()};
  if (m == 0) {
    finalize(pb, outcome);
    outcome.wall_seconds = seconds_since(start);
    return outcome;
  }

  double space = std::pow(static_cast<double>(n), static_cast<double>(m));
  if (space > static_cast<double>(cap)) {
    throw Error(Errc::search_space_too_large, "brute_force",
                "search space " + std::to_string(space) + " exceeds cap " +
                    std::to_string(cap));
  }

  PlacementPlan scratch = pb.make_plan();
  std::vector<std::size_t> assignment(m, 0);
  std::vector<std::size_t> best_assignment;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<double> row(n, 0.0);

  auto write_assignment = [&](PlacementPlan& plan, const std::vector<std::size_t>& a) {
    for (std::size_t i = 0; i < m; ++i) {
      std::fill(row.begin(), row.end(), 0.0);
      row[a[i]] = 1.0;
      plan.set_row(i, row);
    }
  };

  // Lexicographic enumeration with first-strict-minimum keeps ties on the
  // lowest tier indices of the earliest datasets.
  while (true) {
    write_assignment(scratch, assignment);
    bool admissible = true;
    if (enforce_constraints) {
      for (std::size_t k = 0; k < pb.job_count(); ++k) {
        ConstraintReport r = check_constraints(pb, k, scratch);
        if (!r.time_ok || !r.money_ok) {
          admissible = false;
          break;
        }
      }
    }
    if (admissible) {
      double cost = total_cost(pb, scratch);
      if (cost < best_cost) {
        best_cost = cost;
        best_assignment = assignment;
      }
    }
    bool done = false;
    std::size_t pos = m;
    while (pos > 0) {
      --pos;
      if (++assignment[pos] < n) break;
      assignment[pos] = 0;
      if (pos == 0) done = true;
    }
    if (done) break;
  }

  if (best_assignment.empty()) {
    outcome.infeasible = true;
    finalize(pb, outcome);
    outcome.wall_seconds = seconds_since(start);
    return outcome;
  }
  write_assignment(outcome.plan, best_assignment);
  finalize(pb, outcome);
  outcome.wall_seconds = seconds_since(start);
  return outcome;
}

PolicyOutcome performance_policy(const Problem& pb) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < pb.tier_count(); ++j) {
    if (pb.tiers()[j].speed > pb.tiers()[best].speed) best = j;
  }
  return uniform_tier_outcome(pb, best);
}

PolicyOutcome economic_policy(const Problem& pb) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < pb.tier_count(); ++j) {
    if (pb.tiers()[j].storage_price < pb.tiers()[best].storage_price) best = j;
  }
  return uniform_tier_outcome(pb, best);
}

PolicyOutcome act_greedy(const Problem& pb, int passes) {
  auto start = Clock::now();
  PolicyOutcome outcome{pb.make_plan()};
  PlanEvaluator eval(pb, outcome.plan);
  std::vector<double> row(pb.tier_count(), 0.0);
  for (int pass = 0; pass < std::max(1, passes); ++pass) {
    bool changed = false;
    for (std::size_t i = 0; i < pb.dataset_count(); ++i) {
      std::size_t best = 0;
      double best_delta = 0.0;
      bool first = true;
      for (std::size_t j = 0; j < pb.tier_count(); ++j) {
        std::fill(row.begin(), row.end(), 0.0);
        row[j] = 1.0;
        double d = eval.delta_cost(i, row);
        if (first || d < best_delta) {
          best = j;
          best_delta = d;
          first = false;
        }
      }
      std::fill(row.begin(), row.end(), 0.0);
      row[best] = 1.0;
      if (!eval.plan().placed(i)) {
        eval.apply_row(i, row);
        changed = true;
      } else if (eval.delta_cost(i, row) < 0.0) {
        eval.apply_row(i, row);
        changed = true;
      }
    }
    if (!changed) break;
  }
  outcome.plan = eval.plan();
  finalize(pb, outcome);
  outcome.wall_seconds = seconds_since(start);
  return outcome;
}

PolicyOutcome plan_once(const Problem& pb, Policy policy,
                        const PlannerConfig& config, std::uint64_t brute_cap,
                        bool brute_enforce_constraints) {
  switch (policy) {
    case Policy::brute_force:
      return brute_force(pb, brute_cap, brute_enforce_constraints);
    case Policy::performance:
      return performance_policy(pb);
    case Policy::economic:
      return economic_policy(pb);
    case Policy::act_greedy:
      return act_greedy(pb, config.inner_iterations);
    case Policy::lnodp: {
      auto start = Clock::now();
      QueueState zeros = QueueState::zeros(pb.tier_count(), pb.job_count());
      StepResult step = lnodp_step(pb, zeros, pb.make_plan(), config);
      PolicyOutcome outcome{std::move(step.plan)};
      finalize(pb, outcome);
      outcome.wall_seconds = seconds_since(start);
      return outcome;
    }
  }
  throw Error(Errc::schema_error, "policy", "unknown policy");
}

}  // namespace tierplace
