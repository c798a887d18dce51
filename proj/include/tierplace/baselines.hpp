#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tierplace/model.hpp"
#include "tierplace/planner.hpp"

namespace tierplace {

enum class Policy { lnodp, brute_force, performance, economic, act_greedy };

std::optional<Policy> policy_from_name(std::string_view name);
std::string_view policy_name(Policy policy);

struct PolicyOutcome {
  PlacementPlan plan;
  double total_cost = 0.0;
  std::vector<ConstraintReport> per_job;
  double wall_seconds = 0.0;
  bool infeasible = false;
  std::vector<std::string> postponed;  // datasets left without a placement
};

// Exhaustive minimum over whole-tier assignments (no partitioning). The
// search space is N^M; anything above `cap` raises SearchSpaceTooLarge. With
// enforce_constraints only assignments satisfying every job's hard
// constraints compete; if none does, the outcome is flagged infeasible.
PolicyOutcome brute_force(const Problem& pb, std::uint64_t cap = 10'000'000,
                          bool enforce_constraints = false);

// Everything on the fastest tier.
PolicyOutcome performance_policy(const Problem& pb);

// Everything on the cheapest-storage tier.
PolicyOutcome economic_policy(const Problem& pb);

// Per-dataset cost-greedy single-tier choice with no constraint checking.
PolicyOutcome act_greedy(const Problem& pb, int passes = 3);

// Dispatch; lnodp runs one planning step against zero queues.
PolicyOutcome plan_once(const Problem& pb, Policy policy,
                        const PlannerConfig& config,
                        std::uint64_t brute_cap = 10'000'000,
                        bool brute_enforce_constraints = false);

}  // namespace tierplace
