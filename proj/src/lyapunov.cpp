#include "tierplace/lyapunov.hpp"

#include <algorithm>

namespace tierplace {

double update_storage_queue(double backlog, double removals, double arrivals) {
  return std::max(backlog - removals, 0.0) + arrivals;
}

double update_job_queue(double backlog, double placed_mass, double generated) {
  return std::max(backlog - placed_mass, 0.0) + generated;
}

double lyapunov_value(const QueueState& state) {
  double sum = 0.0;
  for (double s : state.storage_backlog) sum += s * s;
  for (double j : state.job_backlog) sum += j * j;
  return 0.5 * sum;
}

double cost_constant(const Problem& pb, std::size_t job) {
  const JobProfile& jp = pb.jobs()[job];
  const EnvironmentParams& env = pb.env();
  double et = execution_time(jp, env);
  double per_exec =
      jp.w_time * jp.nodes * env.init_time_per_node / jp.desired_time +
      (jp.w_time / jp.desired_time +
       jp.w_money * env.vm_price * jp.nodes / jp.desired_money) *
          et;
  return per_exec * jp.frequency;
}

double placement_coefficient(const Problem& pb, std::size_t dataset,
                             std::size_t tier, std::size_t job) {
  const JobProfile& jp = pb.jobs()[job];
  const StorageType& st = pb.tiers()[tier];
  const EnvironmentParams& env = pb.env();
  double unit =
      jp.w_time / (st.speed * jp.desired_time) +
      jp.w_money * env.vm_price * jp.nodes / (st.speed * jp.desired_money) +
      jp.w_money * st.read_price / jp.desired_money +
      jp.w_money * pb.allocation_share(job) * st.storage_price / jp.desired_money;
  return unit * pb.datasets()[dataset].size * jp.frequency;
}

double placement_pressure(const Problem& pb, std::size_t dataset, std::size_t tier,
                          const QueueState& state, double omega) {
  double sum = 0.0;
  for (std::size_t k : pb.dataset_consumers(dataset)) {
    sum += state.job_backlog[k];
    if (omega != 0.0) sum += omega * placement_coefficient(pb, dataset, tier, k);
  }
  return sum - state.storage_backlog[tier];
}

double drift_constant(const DriftBounds& bounds, std::size_t tier_count,
                      std::size_t job_count) {
  return 0.5 * static_cast<double>(tier_count) *
             (bounds.d_max * bounds.d_max + bounds.r_max * bounds.r_max) +
         0.5 * static_cast<double>(job_count) *
             (bounds.g_max * bounds.g_max + bounds.data_max * bounds.data_max);
}

double theorem_bound_rhs(const Problem& pb, const QueueState& state,
                         const PlacementPlan& plan,
                         std::span<const double> removals,
                         std::span<const double> generated,
                         const DriftBounds& bounds, double omega) {
  double rhs = drift_constant(bounds, pb.tier_count(), pb.job_count());
  for (std::size_t k = 0; k < pb.job_count(); ++k) {
    rhs += omega * cost_constant(pb, k);
    rhs -= state.job_backlog[k] * generated[k];
  }
  for (std::size_t j = 0; j < pb.tier_count(); ++j) {
    rhs += state.storage_backlog[j] * removals[j];
  }
  for (std::size_t k = 0; k < pb.job_count(); ++k) {
    for (std::size_t i : pb.job_inputs(k)) {
      auto r = plan.index_of(pb.datasets()[i].id);
      if (!r || !plan.has_row(*r)) continue;
      for (std::size_t j = 0; j < pb.tier_count(); ++j) {
        double p = plan.entry(*r, j);
        if (p == 0.0) continue;
        double coeff = state.job_backlog[k] - state.storage_backlog[j];
        if (omega != 0.0) coeff += omega * placement_coefficient(pb, i, j, k);
        rhs += coeff * p;
      }
    }
  }
  return rhs;
}

}  // namespace tierplace
