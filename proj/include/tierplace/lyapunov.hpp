#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tierplace/model.hpp"

namespace tierplace {

// Per-tier and per-job backlogs. Unit is GB or dataset count depending on the
// scenario's queue_unit. Mutated only through the update operations below.
struct QueueState {
  std::vector<double> storage_backlog;  // S_j
  std::vector<double> job_backlog;      // J_k
  long slot = 0;

  static QueueState zeros(std::size_t tier_count, std::size_t job_count) {
    return QueueState{std::vector<double>(tier_count, 0.0),
                      std::vector<double>(job_count, 0.0), 0};
  }
};

// Worst-case per-slot traffic, derived from a scenario run.
struct DriftBounds {
  double d_max = 0.0;     // arrivals into any tier
  double r_max = 0.0;     // removals from any tier
  double data_max = 0.0;  // placement mass for any job
  double g_max = 0.0;     // generated mass for any job
};

struct PenaltyWeight {
  double omega = 1.0;
};

double update_storage_queue(double backlog, double removals, double arrivals);
double update_job_queue(double backlog, double placed_mass, double generated);

// (1/2)(sum S_j^2 + sum J_k^2)
double lyapunov_value(const QueueState& state);

// Plan-independent share of a job's penalty coefficient (C_k).
double cost_constant(const Problem& pb, std::size_t job);

// Per-(dataset, tier, job) penalty coefficient on a plan entry (C'_{i,j,k}).
double placement_coefficient(const Problem& pb, std::size_t dataset,
                             std::size_t tier, std::size_t job);

// Accept/postpone signal for placing dataset i on tier j:
// sum_{k in Jobs_i} (J_k + omega * C'_{i,j,k}) - S_j.
double placement_pressure(const Problem& pb, std::size_t dataset, std::size_t tier,
                          const QueueState& state, double omega);

// Drift constant L = (N/2)(d_max^2 + r_max^2) + (K/2)(g_max^2 + data_max^2).
double drift_constant(const DriftBounds& bounds, std::size_t tier_count,
                      std::size_t job_count);

// Upper bound on drift + omega * cost for one slot, evaluated at the realized
// removals/generation and the slot's adopted plan.
double theorem_bound_rhs(const Problem& pb, const QueueState& state,
                         const PlacementPlan& plan,
                         std::span<const double> removals,
                         std::span<const double> generated,
                         const DriftBounds& bounds, double omega);

}  // namespace tierplace
