#include "tierplace/planner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tierplace/log.hpp"

namespace tierplace {

void PlannerConfig::validate() const {
  if (max_iterations < 1) {
    throw Error(Errc::schema_error, "planner.max_iterations", "must be >= 1");
  }
  if (inner_iterations < 1) {
    throw Error(Errc::schema_error, "planner.inner_iterations", "must be >= 1");
  }
  if (penalty.omega < 0.0) {
    throw Error(Errc::schema_error, "planner.omega", "must be >= 0");
  }
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    throw Error(Errc::schema_error, "planner.grid_step", "must be in (0, 0.1]");
  }
}

PlanEvaluator::PlanEvaluator(const Problem& pb, const PlacementPlan& plan)
    : pb_(&pb), plan_(plan) {
  transfer_.assign(pb.job_count(), 0.0);
  storage_.assign(pb.job_count(), 0.0);
  access_.assign(pb.job_count(), 0.0);
  unplaced_.assign(pb.job_count(), 0);
  for (std::size_t k = 0; k < pb.job_count(); ++k) {
    for (std::size_t i : pb.job_inputs(k)) {
      if (!plan_.placed(i)) {
        ++unplaced_[k];
        continue;
      }
      Contribution c = contribution(i, plan_.row(i));
      transfer_[k] += c.transfer;
      storage_[k] += c.storage;
      access_[k] += c.access;
    }
  }
}

PlanEvaluator::Contribution PlanEvaluator::contribution(
    std::size_t dataset, std::span<const double> row) const {
  Contribution c;
  const double size = pb_->datasets()[dataset].size;
  for (std::size_t j = 0; j < pb_->tier_count(); ++j) {
    double p = row[j];
    if (p == 0.0) continue;
    const StorageType& st = pb_->tiers()[j];
    c.transfer += size / st.speed * p;
    c.storage += st.storage_price * size * p;
    c.access += st.read_price * size * p;
  }
  return c;
}

double PlanEvaluator::job_time(std::size_t k) const {
  const JobProfile& jp = pb_->jobs()[k];
  return jp.nodes * pb_->env().init_time_per_node + transfer_[k] +
         execution_time(jp, pb_->env());
}

double PlanEvaluator::job_money(std::size_t k) const {
  const JobProfile& jp = pb_->jobs()[k];
  double et = execution_time(jp, pb_->env());
  return pb_->env().vm_price * jp.nodes * (transfer_[k] + et) +
         pb_->allocation_share(k) * storage_[k] + access_[k];
}

double PlanEvaluator::job_cost(std::size_t k) const {
  const JobProfile& jp = pb_->jobs()[k];
  return jp.w_money * (job_money(k) / jp.desired_money) * jp.frequency +
         jp.w_time * (job_time(k) / jp.desired_time);
}

double PlanEvaluator::partial_total_cost() const {
  double total = 0.0;
  for (std::size_t k = 0; k < pb_->job_count(); ++k) {
    if (unplaced_[k] == 0) total += job_cost(k);
  }
  return total;
}

double PlanEvaluator::time_with_row(std::size_t k, std::size_t dataset,
                                    std::span<const double> row) const {
  const JobProfile& jp = pb_->jobs()[k];
  double base = transfer_[k];
  if (plan_.placed(dataset)) base -= contribution(dataset, plan_.row(dataset)).transfer;
  return jp.nodes * pb_->env().init_time_per_node + base +
         contribution(dataset, row).transfer + execution_time(jp, pb_->env());
}

double PlanEvaluator::money_with_row(std::size_t k, std::size_t dataset,
                                     std::span<const double> row) const {
  const JobProfile& jp = pb_->jobs()[k];
  double transfer = transfer_[k];
  double storage = storage_[k];
  double access = access_[k];
  if (plan_.placed(dataset)) {
    Contribution cur = contribution(dataset, plan_.row(dataset));
    transfer -= cur.transfer;
    storage -= cur.storage;
    access -= cur.access;
  }
  Contribution cand = contribution(dataset, row);
  double et = execution_time(jp, pb_->env());
  return pb_->env().vm_price * jp.nodes * (transfer + cand.transfer + et) +
         pb_->allocation_share(k) * (storage + cand.storage) + access + cand.access;
}

double PlanEvaluator::delta_cost(std::size_t dataset,
                                 std::span<const double> row) const {
  Contribution cand = contribution(dataset, row);
  Contribution cur;
  if (plan_.placed(dataset)) cur = contribution(dataset, plan_.row(dataset));
  double delta = 0.0;
  for (std::size_t k : pb_->dataset_consumers(dataset)) {
    const JobProfile& jp = pb_->jobs()[k];
    double d_transfer = cand.transfer - cur.transfer;
    double d_money = pb_->env().vm_price * jp.nodes * d_transfer +
                     pb_->allocation_share(k) * (cand.storage - cur.storage) +
                     (cand.access - cur.access);
    delta += jp.w_money * (d_money / jp.desired_money) * jp.frequency +
             jp.w_time * (d_transfer / jp.desired_time);
  }
  return delta;
}

void PlanEvaluator::apply_row(std::size_t dataset, std::span<const double> row) {
  Contribution cand = contribution(dataset, row);
  bool was_placed = plan_.placed(dataset);
  Contribution cur;
  if (was_placed) cur = contribution(dataset, plan_.row(dataset));
  for (std::size_t k : pb_->dataset_consumers(dataset)) {
    transfer_[k] += cand.transfer - cur.transfer;
    storage_[k] += cand.storage - cur.storage;
    access_[k] += cand.access - cur.access;
    if (!was_placed) --unplaced_[k];
  }
  plan_.set_row(dataset, row);
}

namespace {

std::vector<double> unit_row(std::size_t tier_count, std::size_t tier) {
  std::vector<double> row(tier_count, 0.0);
  row[tier] = 1.0;
  return row;
}

std::vector<double> split_row(std::size_t tier_count, std::size_t j1,
                              std::size_t j2, double p) {
  std::vector<double> row(tier_count, 0.0);
  row[j1] = p;
  row[j2] += 1.0 - p;
  return row;
}

double budget_value(const Problem& pb, std::size_t k, double money) {
  return pb.budget_basis() == BudgetBasis::per_period
             ? pb.jobs()[k].frequency * money
             : money;
}

bool row_feasible(const PlanEvaluator& eval, std::size_t dataset,
                  std::span<const double> row, std::size_t k) {
  const Problem& pb = eval.problem();
  const JobProfile& jp = pb.jobs()[k];
  double t = eval.time_with_row(k, dataset, row);
  if (t > jp.time_deadline + kEps) return false;
  double m = budget_value(pb, k, eval.money_with_row(k, dataset, row));
  return m <= jp.money_budget + kEps;
}

bool row_time_feasible(const PlanEvaluator& eval, std::size_t dataset,
                       std::span<const double> row, std::size_t k) {
  return eval.time_with_row(k, dataset, row) <=
         eval.problem().jobs()[k].time_deadline + kEps;
}

bool row_money_feasible(const PlanEvaluator& eval, std::size_t dataset,
                        std::span<const double> row, std::size_t k) {
  const Problem& pb = eval.problem();
  return budget_value(pb, k, eval.money_with_row(k, dataset, row)) <=
         pb.jobs()[k].money_budget + kEps;
}

// Cost-optimal tier of a candidate set, ranked by the cost change of placing
// the dataset fully there; ties go to the lowest tier index.
std::size_t cost_optimal_tier(const PlanEvaluator& eval, std::size_t dataset,
                              const std::vector<std::size_t>& candidates) {
  std::size_t best = candidates.front();
  double best_delta = 0.0;
  bool first = true;
  for (std::size_t j : candidates) {
    auto row = unit_row(eval.problem().tier_count(), j);
    double d = eval.delta_cost(dataset, row);
    if (first || d < best_delta) {
      best = j;
      best_delta = d;
      first = false;
    }
  }
  return best;
}

}  // namespace

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> feasible_type_sets(
    const PlanEvaluator& eval, std::size_t dataset) {
  const Problem& pb = eval.problem();
  std::vector<std::size_t> time_set;
  std::vector<std::size_t> money_set;
  for (std::size_t j = 0; j < pb.tier_count(); ++j) {
    auto row = unit_row(pb.tier_count(), j);
    bool time_ok = true;
    bool money_ok = true;
    for (std::size_t k : pb.dataset_consumers(dataset)) {
      if (time_ok && !row_time_feasible(eval, dataset, row, k)) time_ok = false;
      if (money_ok && !row_money_feasible(eval, dataset, row, k)) money_ok = false;
      if (!time_ok && !money_ok) break;
    }
    if (time_ok) time_set.push_back(j);
    if (money_ok) money_set.push_back(j);
  }
  return {std::move(time_set), std::move(money_set)};
}

namespace {

struct ClosedForm {
  double a = std::numeric_limits<double>::quiet_NaN();
  double b = std::numeric_limits<double>::quiet_NaN();
  double c = std::numeric_limits<double>::quiet_NaN();
  double d = std::numeric_limits<double>::quiet_NaN();
  bool degenerate = false;
  bool empty = true;
  double lower = 0.0;
  double upper = 0.0;
  bool c_zero = false;
};

ClosedForm closed_form_interval(const Problem& pb, std::size_t dataset,
                                std::size_t job, std::size_t j1, std::size_t j2) {
  ClosedForm out;
  const JobProfile& jp = pb.jobs()[job];
  const StorageType& t1 = pb.tiers()[j1];
  const StorageType& t2 = pb.tiers()[j2];
  const double size = pb.datasets()[dataset].size;
  if (t1.speed == t2.speed) {
    out.degenerate = true;
    return out;
  }
  double et = execution_time(jp, pb.env());
  double init = jp.nodes * pb.env().init_time_per_node;
  out.d = pb.allocation_share(job);
  out.a = (jp.time_deadline - et - init) / size * (t1.speed * t2.speed) /
              (t2.speed - t1.speed) -
          t1.speed / (t2.speed - t1.speed);
  out.c = pb.env().vm_price * jp.nodes * (1.0 / t1.speed - 1.0 / t2.speed) +
          out.d * (t1.storage_price - t2.storage_price) +
          (t1.read_price - t2.read_price);
  if (out.c == 0.0) {
    out.c_zero = true;
    return out;
  }
  out.b = jp.money_budget / (out.c * size) -
          pb.env().vm_price * jp.nodes * et / (out.c * size) -
          pb.env().vm_price * jp.nodes / (out.c * t2.speed) -
          t2.storage_price / (out.c * size) - t2.read_price / (out.c * size);
  if (out.c > 0.0) {
    out.lower = std::max(0.0, out.a);
    out.upper = std::min(out.b, 1.0);
  } else {
    out.lower = std::max(out.a, out.b);
    out.upper = 1.0;
  }
  out.empty = out.lower > out.upper;
  return out;
}

}  // namespace

FeasibleInterval feasible_interval(const PlanEvaluator& eval, std::size_t dataset,
                                   std::size_t job, std::size_t time_tier,
                                   std::size_t money_tier, IntervalMode mode,
                                   double grid_step) {
  if (time_tier == money_tier) {
    throw Error(Errc::degenerate_tier_pair, "planner",
                "feasible_interval requires two distinct tiers");
  }
  const Problem& pb = eval.problem();
  FeasibleInterval out;
  out.time_tier = time_tier;
  out.money_tier = money_tier;

  ClosedForm cf = closed_form_interval(pb, dataset, job, time_tier, money_tier);
  out.coef_a = cf.a;
  out.coef_b = cf.b;
  out.coef_c = cf.c;
  out.coef_d = cf.d;
  out.closed_form_degenerate = cf.degenerate;

  if (mode == IntervalMode::closed_form) {
    if (cf.degenerate) {
      throw Error(Errc::degenerate_tier_pair, "planner",
                  "equal transfer speeds make the closed form singular");
    }
    if (!cf.c_zero) {
      out.empty = cf.empty;
      out.lower = cf.empty ? 0.0 : cf.lower;
      out.upper = cf.empty ? 0.0 : cf.upper;
      return out;
    }
    // c == 0 leaves the budget side undetermined; fall through to the scan.
  }

  auto feasible_at = [&](double p) {
    auto row = split_row(pb.tier_count(), time_tier, money_tier, p);
    return row_feasible(eval, dataset, row, job);
  };

  long steps = std::lround(std::ceil(1.0 / grid_step));
  long first = -1;
  long last = -1;
  for (long s = 0; s <= steps; ++s) {
    double p = std::min(1.0, s * grid_step);
    if (feasible_at(p)) {
      if (first < 0) first = s;
      last = s;
    }
  }
  if (first < 0) {
    out.empty = true;
    return out;
  }

  auto bisect = [&](double feasible_p, double infeasible_p) {
    for (int it = 0; it < 64 && std::abs(feasible_p - infeasible_p) > 1e-9; ++it) {
      double mid = 0.5 * (feasible_p + infeasible_p);
      if (feasible_at(mid)) {
        feasible_p = mid;
      } else {
        infeasible_p = mid;
      }
    }
    return feasible_p;
  };

  double lower = std::min(1.0, first * grid_step);
  double upper = std::min(1.0, last * grid_step);
  if (first > 0) lower = bisect(lower, (first - 1) * grid_step);
  if (last < steps) upper = bisect(upper, std::min(1.0, (last + 1) * grid_step));
  out.empty = false;
  out.lower = lower;
  out.upper = upper;

  if (!cf.degenerate && !cf.c_zero && log_enabled_debug()) {
    bool mismatch = cf.empty != out.empty ||
                    (!cf.empty && (std::abs(cf.lower - out.lower) > grid_step ||
                                   std::abs(cf.upper - out.upper) > grid_step));
    if (mismatch) {
      std::ostringstream msg;
      msg << "feasible interval mismatch for dataset "
          << pb.datasets()[dataset].id << ", job " << pb.jobs()[job].id
          << ": numeric [" << out.lower << ", " << out.upper << "] vs closed form ";
      if (cf.empty) {
        msg << "empty";
      } else {
        msg << "[" << cf.lower << ", " << cf.upper << "]";
      }
      log_debug(msg.str());
    }
  }
  return out;
}

std::optional<std::vector<double>> partition_place(
    const PlanEvaluator& eval, std::size_t dataset,
    const std::vector<std::size_t>& time_set,
    const std::vector<std::size_t>& money_set, const PlannerConfig& config,
    std::string* detail) {
  const Problem& pb = eval.problem();
  if (time_set.empty() || money_set.empty()) {
    if (detail) {
      *detail = time_set.empty() ? "no tier satisfies the time deadline"
                                 : "no tier satisfies the money budget";
    }
    return std::nullopt;
  }
  std::size_t j1 = cost_optimal_tier(eval, dataset, time_set);
  std::size_t j2 = cost_optimal_tier(eval, dataset, money_set);
  if (j1 == j2) return unit_row(pb.tier_count(), j1);

  double lower = 0.0;
  double upper = 1.0;
  for (std::size_t k : pb.dataset_consumers(dataset)) {
    FeasibleInterval iv = feasible_interval(eval, dataset, k, j1, j2,
                                            IntervalMode::numeric, config.grid_step);
    if (iv.empty) {
      lower = 1.0;
      upper = 0.0;
      break;
    }
    lower = std::max(lower, iv.lower);
    upper = std::min(upper, iv.upper);
  }
  if (lower > upper) {
    if (detail) *detail = "feasible split intervals of the consumers do not intersect";
    return std::nullopt;
  }
  // Cost is affine in p, so one of the interval endpoints is optimal.
  auto row_low = split_row(pb.tier_count(), j1, j2, lower);
  auto row_high = split_row(pb.tier_count(), j1, j2, upper);
  double cost_low = eval.delta_cost(dataset, row_low);
  double cost_high = eval.delta_cost(dataset, row_high);
  return cost_high < cost_low ? row_high : row_low;
}

std::optional<std::vector<double>> place_dataset(const PlanEvaluator& eval,
                                                 std::size_t dataset,
                                                 const PlannerConfig& config,
                                                 std::string* detail) {
  const Problem& pb = eval.problem();
  std::vector<std::size_t> all(pb.tier_count());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
  std::size_t best = cost_optimal_tier(eval, dataset, all);

  auto [time_set, money_set] = feasible_type_sets(eval, dataset);
  bool in_time = std::find(time_set.begin(), time_set.end(), best) != time_set.end();
  bool in_money =
      std::find(money_set.begin(), money_set.end(), best) != money_set.end();
  if (in_time && in_money) return unit_row(pb.tier_count(), best);
  return partition_place(eval, dataset, time_set, money_set, config, detail);
}

PlacementPlan near_optimal_planning(const Problem& pb,
                                    const std::vector<std::size_t>& order,
                                    const PlacementPlan& start,
                                    const PlannerConfig& config) {
  config.validate();
  PlanEvaluator eval(pb, start);
  std::vector<InfeasibleDataset> infeasible;

  for (int pass = 0; pass < config.inner_iterations; ++pass) {
    bool changed = false;
    for (std::size_t i : order) {
      std::string detail;
      auto row = place_dataset(eval, i, config, &detail);
      if (!row) {
        if (!eval.plan().placed(i) && pass == 0) {
          infeasible.push_back({pb.datasets()[i].id, detail});
        }
        continue;  // a placed dataset keeps its current row
      }
      if (!eval.plan().placed(i)) {
        eval.apply_row(i, *row);
        changed = true;
      } else if (eval.delta_cost(i, *row) < 0.0) {
        eval.apply_row(i, *row);
        changed = true;
      }
    }
    if (pass == 0 && !infeasible.empty()) throw InfeasibleError(std::move(infeasible));
    if (!changed) break;
  }
  return eval.plan();
}

StepResult lnodp_step(const Problem& pb, const QueueState& state,
                      const PlacementPlan& plan, const PlannerConfig& config) {
  config.validate();
  const double omega = config.penalty.omega;

  std::vector<std::size_t> order(pb.dataset_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<double> key(pb.dataset_count(), 0.0);
  for (std::size_t i = 0; i < pb.dataset_count(); ++i) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pb.tier_count(); ++j) {
      worst = std::max(worst, placement_pressure(pb, i, j, state, omega));
    }
    key[i] = worst;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (key[a] != key[b]) return key[a] > key[b];
    return pb.datasets()[a].id < pb.datasets()[b].id;
  });

  PlacementPlan candidate = near_optimal_planning(pb, order, plan, config);

  StepResult result{pb.make_plan(), {}};
  for (std::size_t i = 0; i < pb.dataset_count(); ++i) {
    if (!candidate.placed(i)) {
      result.postponed.push_back(pb.datasets()[i].id);
      continue;
    }
    auto row = candidate.row(i);
    bool accept = true;
    for (std::size_t j = 0; j < pb.tier_count(); ++j) {
      if (row[j] != 0.0 && placement_pressure(pb, i, j, state, omega) > 0.0) {
        accept = false;
        break;
      }
    }
    if (accept) {
      result.plan.set_row(i, row);
    } else {
      result.postponed.push_back(pb.datasets()[i].id);
    }
  }
  return result;
}

}  // namespace tierplace
