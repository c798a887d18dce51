#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "tierplace/baselines.hpp"
#include "tierplace/lyapunov.hpp"

using namespace tierplace;
using namespace tierplace::testing;

TEST_CASE("queue updates clamp at zero") {
  CHECK(update_storage_queue(5.0, 2.0, 1.5) == doctest::Approx(4.5));
  CHECK(update_storage_queue(1.0, 3.0, 0.5) == doctest::Approx(0.5));
  CHECK(update_storage_queue(0.0, 0.0, 0.0) == 0.0);
  CHECK(update_job_queue(5.0, 2.0, 1.5) == doctest::Approx(4.5));
  CHECK(update_job_queue(1.0, 3.0, 0.5) == doctest::Approx(0.5));
  CHECK(update_job_queue(0.0, 0.0, 0.0) == 0.0);

  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    double backlog = rng.uniform(0.0, 10.0);
    double service = rng.uniform(0.0, 15.0);
    double arrivals = rng.uniform(0.0, 10.0);
    CHECK(update_storage_queue(backlog, service, arrivals) >= 0.0);
    CHECK(update_job_queue(backlog, service, arrivals) >= 0.0);
  }
}

TEST_CASE("lyapunov_value is half the squared backlog mass") {
  QueueState state{{3.0, 4.0}, {0.0}, 0};
  CHECK(lyapunov_value(state) == doctest::Approx(12.5));
  CHECK(lyapunov_value(QueueState::zeros(4, 3)) == 0.0);

  SUBCASE("matches an independent recomputation and tier/job permutation") {
    Rng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
      QueueState random = QueueState::zeros(4, 3);
      for (auto& s : random.storage_backlog) s = rng.uniform(0.0, 9.0);
      for (auto& j : random.job_backlog) j = rng.uniform(0.0, 9.0);
      double expected = 0.0;
      for (double s : random.storage_backlog) expected += s * s;
      for (double j : random.job_backlog) expected += j * j;
      expected *= 0.5;
      CHECK(lyapunov_value(random) == doctest::Approx(expected).epsilon(1e-15));

      QueueState permuted = random;
      std::swap(permuted.storage_backlog[0], permuted.storage_backlog[3]);
      std::swap(permuted.job_backlog[0], permuted.job_backlog[2]);
      CHECK(lyapunov_value(permuted) == doctest::Approx(lyapunov_value(random)));
    }
  }
}

namespace {

Problem coefficient_problem(double w_time, double frequency, double size = 10.0) {
  std::vector<StorageType> tiers = table2_tiers();
  std::vector<DataSet> datasets = {make_dataset("d0", size)};
  JobProfile job = make_job("job0", {"d0"}, w_time);
  job.frequency = frequency;
  job.alpha = 0.25;
  job.nodes = 4;
  job.workload = 8000.0;
  return Problem(std::move(tiers), std::move(datasets), {job}, default_env());
}

}  // namespace

TEST_CASE("cost_constant matches the per-job penalty formula") {
  SUBCASE("pure-money weighting") {
    Problem pb = coefficient_problem(0.0, 2.0);
    const JobProfile& job = pb.jobs()[0];
    double et = execution_time(job, pb.env());
    double expected = 1.0 * pb.env().vm_price * job.nodes * et /
                      job.desired_money * job.frequency;
    CHECK(cost_constant(pb, 0) == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("linear in the frequency") {
    Problem once = coefficient_problem(0.5, 1.0);
    Problem twice = coefficient_problem(0.5, 2.0);
    CHECK(cost_constant(twice, 0) ==
          doctest::Approx(2.0 * cost_constant(once, 0)).epsilon(1e-12));
  }

  SUBCASE("full substitution against a symbolic recomputation") {
    Problem pb = coefficient_problem(0.3, 1.0 / 3.0);
    const JobProfile& job = pb.jobs()[0];
    const EnvironmentParams& env = pb.env();
    double et = (job.alpha / job.nodes + (1.0 - job.alpha)) * job.workload /
                env.compute_speed;
    double expected = (job.w_time * job.nodes * env.init_time_per_node /
                           job.desired_time +
                       (job.w_time / job.desired_time +
                        job.w_money * env.vm_price * job.nodes / job.desired_money) *
                           et) *
                      job.frequency;
    CHECK(cost_constant(pb, 0) == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("placement_coefficient matches the per-entry penalty formula") {
  SUBCASE("scales linearly with the dataset size") {
    Problem one = coefficient_problem(0.5, 1.0, 5.0);
    Problem two = coefficient_problem(0.5, 1.0, 10.0);
    for (std::size_t j = 0; j < one.tier_count(); ++j) {
      CHECK(placement_coefficient(two, 0, j, 0) ==
            doctest::Approx(2.0 * placement_coefficient(one, 0, j, 0))
                .epsilon(1e-12));
    }
    Problem tiny = coefficient_problem(0.5, 1.0, 1e-12);
    CHECK(placement_coefficient(tiny, 0, 0, 0) ==
          doctest::Approx(0.0).epsilon(1e-9));
  }

  SUBCASE("pure-time weighting isolates the transfer term") {
    Problem pb = coefficient_problem(1.0, 2.0);
    const JobProfile& job = pb.jobs()[0];
    for (std::size_t j = 0; j < pb.tier_count(); ++j) {
      double expected = 1.0 / (pb.tiers()[j].speed * job.desired_time) * 10.0 *
                        job.frequency;
      CHECK(placement_coefficient(pb, 0, j, 0) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }

  SUBCASE("four-tier preset instance against the oracle") {
    Problem pb = coefficient_problem(0.4, 1.0 / 12.0);
    const JobProfile& job = pb.jobs()[0];
    const EnvironmentParams& env = pb.env();
    for (std::size_t j = 0; j < pb.tier_count(); ++j) {
      const StorageType& st = pb.tiers()[j];
      double expected =
          (job.w_time / (st.speed * job.desired_time) +
           job.w_money * env.vm_price * job.nodes / (st.speed * job.desired_money) +
           job.w_money * st.read_price / job.desired_money +
           job.w_money * job.workload * st.storage_price /
               (job.workload * job.frequency * job.desired_money)) *
          10.0 * job.frequency;
      CHECK(placement_coefficient(pb, 0, j, 0) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("placement_pressure combines backlogs and penalty coefficients") {
  Problem pb = coefficient_problem(0.5, 1.0);
  QueueState state = QueueState::zeros(pb.tier_count(), pb.job_count());

  SUBCASE("omega zero leaves only the queue difference") {
    state.job_backlog[0] = 2.5;
    state.storage_backlog[1] = 4.0;
    CHECK(placement_pressure(pb, 0, 1, state, 0.0) == doctest::Approx(-1.5));
    CHECK(placement_pressure(pb, 0, 0, state, 0.0) == doctest::Approx(2.5));
  }

  SUBCASE("zero job backlog reduces to penalty minus storage backlog") {
    state.storage_backlog[2] = 7.0;
    double omega = 1.5;
    double expected = omega * placement_coefficient(pb, 0, 2, 0) - 7.0;
    CHECK(placement_pressure(pb, 0, 2, state, omega) ==
          doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("random states match an independent recomputation") {
    Rng rng(17);
    Problem multi = random_problem(rng, 4, 3);
    QueueState qs = QueueState::zeros(multi.tier_count(), multi.job_count());
    for (auto& s : qs.storage_backlog) s = rng.uniform(0.0, 5.0);
    for (auto& j : qs.job_backlog) j = rng.uniform(0.0, 5.0);
    double omega = rng.uniform(0.0, 2.0);
    for (std::size_t i = 0; i < multi.dataset_count(); ++i) {
      for (std::size_t j = 0; j < multi.tier_count(); ++j) {
        double expected = -qs.storage_backlog[j];
        for (std::size_t k : multi.dataset_consumers(i)) {
          expected += qs.job_backlog[k] +
                      omega * placement_coefficient(multi, i, j, k);
        }
        CHECK(placement_pressure(multi, i, j, qs, omega) ==
              doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }

  SUBCASE("slopes in the backlogs are exactly +-1") {
    state = QueueState::zeros(pb.tier_count(), pb.job_count());
    double base = placement_pressure(pb, 0, 1, state, 1.0);
    state.storage_backlog[1] += 3.0;
    CHECK(placement_pressure(pb, 0, 1, state, 1.0) == doctest::Approx(base - 3.0));
    state.job_backlog[0] += 2.0;
    CHECK(placement_pressure(pb, 0, 1, state, 1.0) ==
          doctest::Approx(base - 3.0 + 2.0));
  }

  SUBCASE("without penalty the pressure ignores prices") {
    std::vector<StorageType> cheap = {{"a", "a", 0.0001, 0.0, 1.0, std::nullopt}};
    std::vector<StorageType> dear = {{"a", "a", 99.0, 5.0, 0.001, std::nullopt}};
    std::vector<DataSet> d1 = {make_dataset("d0", 10.0)};
    std::vector<DataSet> d2 = {make_dataset("d0", 10.0)};
    Problem pb1(std::move(cheap), std::move(d1), {make_job("j", {"d0"})},
                default_env());
    Problem pb2(std::move(dear), std::move(d2), {make_job("j", {"d0"})},
                default_env());
    QueueState qs = QueueState::zeros(1, 1);
    qs.storage_backlog[0] = 1.25;
    qs.job_backlog[0] = 0.5;
    CHECK(placement_pressure(pb1, 0, 0, qs, 0.0) ==
          placement_pressure(pb2, 0, 0, qs, 0.0));
  }
}

TEST_CASE("drift constant and bound right-hand side") {
  Problem pb = coefficient_problem(0.5, 1.0);
  QueueState state = QueueState::zeros(pb.tier_count(), pb.job_count());
  PlacementPlan empty = pb.make_plan();
  std::vector<double> no_removals(pb.tier_count(), 0.0);
  std::vector<double> no_generation(pb.job_count(), 0.0);

  SUBCASE("zero state, zero plan, zero traffic reduces to L plus the penalty") {
    DriftBounds bounds{2.0, 1.0, 3.0, 0.5};
    double L = drift_constant(bounds, pb.tier_count(), pb.job_count());
    CHECK(L == doctest::Approx(0.5 * 4 * (4.0 + 1.0) + 0.5 * 1 * (0.25 + 9.0)));
    double omega = 1.7;
    double rhs = theorem_bound_rhs(pb, state, empty, no_removals, no_generation,
                                   bounds, omega);
    CHECK(rhs == doctest::Approx(L + omega * cost_constant(pb, 0)).epsilon(1e-12));
  }

  SUBCASE("zero bounds and zero traffic leave exactly the penalty sum") {
    DriftBounds bounds{0.0, 0.0, 0.0, 0.0};
    double omega = 2.0;
    double rhs = theorem_bound_rhs(pb, state, empty, no_removals, no_generation,
                                   bounds, omega);
    CHECK(rhs == doctest::Approx(omega * cost_constant(pb, 0)).epsilon(1e-12));
  }

  SUBCASE("queue terms enter with their stated signs") {
    DriftBounds bounds{0.0, 0.0, 0.0, 0.0};
    state.storage_backlog[0] = 2.0;
    state.job_backlog[0] = 3.0;
    std::vector<double> removals(pb.tier_count(), 0.0);
    removals[0] = 1.5;
    std::vector<double> generated(pb.job_count(), 0.0);
    generated[0] = 0.5;
    PlacementPlan plan = pb.make_plan();
    std::vector<double> row(pb.tier_count(), 0.0);
    row[0] = 1.0;
    plan.set_row(0, row);
    double omega = 0.0;
    double rhs = theorem_bound_rhs(pb, state, plan, removals, generated, bounds,
                                   omega);
    // S*r - J*G + (J - S) * p
    CHECK(rhs == doctest::Approx(2.0 * 1.5 - 3.0 * 0.5 + (3.0 - 2.0) * 1.0));
  }
}
