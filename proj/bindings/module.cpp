#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <nlohmann/json.hpp>

#include "tierplace/baselines.hpp"
#include "tierplace/lyapunov.hpp"
#include "tierplace/model.hpp"
#include "tierplace/planner.hpp"
#include "tierplace/scenario_io.hpp"
#include "tierplace/simulator.hpp"

namespace py = pybind11;
using namespace tierplace;

namespace {

std::vector<double> row_as_vector(const PlacementPlan& plan, std::size_t i) {
  auto row = plan.row(i);
  return {row.begin(), row.end()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tiered-storage data placement: cost model, queue-aware planner, "
            "baseline policies, and slotted simulator";

  py::register_exception<Error>(m, "Error");

  py::enum_<DataSet::Origin>(m, "Origin")
      .value("input", DataSet::Origin::input)
      .value("intermediate", DataSet::Origin::intermediate);

  py::enum_<BudgetBasis>(m, "BudgetBasis")
      .value("per_execution", BudgetBasis::per_execution)
      .value("per_period", BudgetBasis::per_period);

  py::enum_<QueueUnit>(m, "QueueUnit")
      .value("gb", QueueUnit::gb)
      .value("fraction", QueueUnit::fraction);

  py::enum_<Policy>(m, "Policy")
      .value("lnodp", Policy::lnodp)
      .value("brute_force", Policy::brute_force)
      .value("performance", Policy::performance)
      .value("economic", Policy::economic)
      .value("act_greedy", Policy::act_greedy);

  py::enum_<IntervalMode>(m, "IntervalMode")
      .value("numeric", IntervalMode::numeric)
      .value("closed_form", IntervalMode::closed_form);

  py::class_<StorageType>(m, "StorageType")
      .def(py::init<>())
      .def_readwrite("id", &StorageType::id)
      .def_readwrite("name", &StorageType::name)
      .def_readwrite("storage_price", &StorageType::storage_price)
      .def_readwrite("read_price", &StorageType::read_price)
      .def_readwrite("speed", &StorageType::speed)
      .def_readwrite("validity", &StorageType::validity);

  py::class_<DataSet>(m, "DataSet")
      .def(py::init<>())
      .def_readwrite("id", &DataSet::id)
      .def_readwrite("size", &DataSet::size)
      .def_readwrite("consumers", &DataSet::consumers)
      .def_readwrite("origin", &DataSet::origin);

  py::class_<JobProfile>(m, "JobProfile")
      .def(py::init<>())
      .def_readwrite("id", &JobProfile::id)
      .def_readwrite("workload", &JobProfile::workload)
      .def_readwrite("alpha", &JobProfile::alpha)
      .def_readwrite("nodes", &JobProfile::nodes)
      .def_readwrite("frequency", &JobProfile::frequency)
      .def_readwrite("desired_time", &JobProfile::desired_time)
      .def_readwrite("desired_money", &JobProfile::desired_money)
      .def_readwrite("time_deadline", &JobProfile::time_deadline)
      .def_readwrite("money_budget", &JobProfile::money_budget)
      .def_readwrite("w_time", &JobProfile::w_time)
      .def_readwrite("w_money", &JobProfile::w_money)
      .def_readwrite("inputs", &JobProfile::inputs)
      .def_readwrite("intermediate_size", &JobProfile::intermediate_size);

  py::class_<EnvironmentParams>(m, "EnvironmentParams")
      .def(py::init<>())
      .def_readwrite("init_time_per_node", &EnvironmentParams::init_time_per_node)
      .def_readwrite("compute_speed", &EnvironmentParams::compute_speed)
      .def_readwrite("vm_price", &EnvironmentParams::vm_price);

  py::class_<PenaltyWeight>(m, "PenaltyWeight")
      .def(py::init<>())
      .def_readwrite("omega", &PenaltyWeight::omega);

  py::class_<PlannerConfig>(m, "PlannerConfig")
      .def(py::init<>())
      .def_readwrite("max_iterations", &PlannerConfig::max_iterations)
      .def_readwrite("inner_iterations", &PlannerConfig::inner_iterations)
      .def_readwrite("penalty", &PlannerConfig::penalty)
      .def_readwrite("grid_step", &PlannerConfig::grid_step)
      .def_property(
          "omega", [](const PlannerConfig& c) { return c.penalty.omega; },
          [](PlannerConfig& c, double v) { c.penalty.omega = v; });

  py::class_<PlacementPlan>(m, "PlacementPlan")
      .def("dataset_ids", &PlacementPlan::dataset_ids)
      .def("tier_count", &PlacementPlan::tier_count)
      .def("has_row", &PlacementPlan::has_row)
      .def("row", &row_as_vector)
      .def("set_row",
           [](PlacementPlan& plan, std::size_t i, const std::vector<double>& row) {
             plan.set_row(i, row);
           })
      .def("clear_row", &PlacementPlan::clear_row)
      .def("entry", &PlacementPlan::entry)
      .def("row_sum", &PlacementPlan::row_sum)
      .def("placed", &PlacementPlan::placed)
      .def("index_of", &PlacementPlan::index_of)
      .def("validate", &PlacementPlan::validate);

  py::class_<Problem>(m, "Problem")
      .def(py::init<std::vector<StorageType>, std::vector<DataSet>,
                    std::vector<JobProfile>, EnvironmentParams, BudgetBasis>(),
           py::arg("tiers"), py::arg("datasets"), py::arg("jobs"), py::arg("env"),
           py::arg("budget_basis") = BudgetBasis::per_execution)
      .def_property_readonly("tiers", &Problem::tiers)
      .def_property_readonly("datasets", &Problem::datasets)
      .def_property_readonly("jobs", &Problem::jobs)
      .def_property_readonly("env", &Problem::env)
      .def("job_index", &Problem::job_index)
      .def("dataset_index", &Problem::dataset_index)
      .def("job_inputs", &Problem::job_inputs)
      .def("dataset_consumers", &Problem::dataset_consumers)
      .def("workload_frequency_sum", &Problem::workload_frequency_sum)
      .def("allocation_share", &Problem::allocation_share)
      .def("make_plan", &Problem::make_plan);

  py::class_<ConstraintReport>(m, "ConstraintReport")
      .def_readonly("time_ok", &ConstraintReport::time_ok)
      .def_readonly("money_ok", &ConstraintReport::money_ok)
      .def_readonly("time_value", &ConstraintReport::time_value)
      .def_readonly("money_value", &ConstraintReport::money_value);

  m.def("estimate_alpha", &estimate_alpha, py::arg("t1"), py::arg("m1"),
        py::arg("t2"), py::arg("m2"));
  m.def("execution_time", &execution_time);
  m.def("transfer_time", &transfer_time);
  m.def("job_time", &job_time);
  m.def("exec_money", &exec_money);
  m.def("storage_money", &storage_money);
  m.def("access_money", &access_money);
  m.def("job_money", &job_money);
  m.def("job_cost", &job_cost);
  m.def("total_cost", &total_cost);
  m.def("check_constraints", &check_constraints);
  m.def("frequency_preset", [](const std::string& name) {
    return frequency_preset(name);
  });

  py::class_<QueueState>(m, "QueueState")
      .def(py::init<>())
      .def_static("zeros", &QueueState::zeros)
      .def_readwrite("storage_backlog", &QueueState::storage_backlog)
      .def_readwrite("job_backlog", &QueueState::job_backlog)
      .def_readwrite("slot", &QueueState::slot);

  py::class_<DriftBounds>(m, "DriftBounds")
      .def(py::init<>())
      .def_readwrite("d_max", &DriftBounds::d_max)
      .def_readwrite("r_max", &DriftBounds::r_max)
      .def_readwrite("data_max", &DriftBounds::data_max)
      .def_readwrite("g_max", &DriftBounds::g_max);

  m.def("update_storage_queue", &update_storage_queue);
  m.def("update_job_queue", &update_job_queue);
  m.def("lyapunov_value", &lyapunov_value);
  m.def("cost_constant", &cost_constant);
  m.def("placement_coefficient", &placement_coefficient);
  m.def("placement_pressure", &placement_pressure);
  m.def("drift_constant", &drift_constant);
  m.def("theorem_bound_rhs",
        [](const Problem& pb, const QueueState& state, const PlacementPlan& plan,
           const std::vector<double>& removals, const std::vector<double>& generated,
           const DriftBounds& bounds, double omega) {
          return theorem_bound_rhs(pb, state, plan, removals, generated, bounds,
                                   omega);
        });

  py::class_<FeasibleInterval>(m, "FeasibleInterval")
      .def_readonly("empty", &FeasibleInterval::empty)
      .def_readonly("lower", &FeasibleInterval::lower)
      .def_readonly("upper", &FeasibleInterval::upper)
      .def_readonly("time_tier", &FeasibleInterval::time_tier)
      .def_readonly("money_tier", &FeasibleInterval::money_tier)
      .def_readonly("coef_a", &FeasibleInterval::coef_a)
      .def_readonly("coef_b", &FeasibleInterval::coef_b)
      .def_readonly("coef_c", &FeasibleInterval::coef_c)
      .def_readonly("coef_d", &FeasibleInterval::coef_d)
      .def_readonly("closed_form_degenerate",
                    &FeasibleInterval::closed_form_degenerate);

  m.def(
      "feasible_type_sets",
      [](const Problem& pb, const PlacementPlan& plan, std::size_t dataset) {
        PlanEvaluator eval(pb, plan);
        return feasible_type_sets(eval, dataset);
      },
      py::arg("problem"), py::arg("plan"), py::arg("dataset"));
  m.def(
      "feasible_interval",
      [](const Problem& pb, const PlacementPlan& plan, std::size_t dataset,
         std::size_t job, std::size_t time_tier, std::size_t money_tier,
         IntervalMode mode, double grid_step) {
        PlanEvaluator eval(pb, plan);
        return feasible_interval(eval, dataset, job, time_tier, money_tier, mode,
                                 grid_step);
      },
      py::arg("problem"), py::arg("plan"), py::arg("dataset"), py::arg("job"),
      py::arg("time_tier"), py::arg("money_tier"),
      py::arg("mode") = IntervalMode::numeric, py::arg("grid_step") = 0.001);
  m.def(
      "place_dataset",
      [](const Problem& pb, const PlacementPlan& plan, std::size_t dataset,
         const PlannerConfig& config) -> std::optional<std::vector<double>> {
        PlanEvaluator eval(pb, plan);
        return place_dataset(eval, dataset, config);
      },
      py::arg("problem"), py::arg("plan"), py::arg("dataset"), py::arg("config"));
  m.def("near_optimal_planning", &near_optimal_planning);

  py::class_<StepResult>(m, "StepResult")
      .def_readonly("plan", &StepResult::plan)
      .def_readonly("postponed", &StepResult::postponed);

  m.def("lnodp_step", &lnodp_step);

  py::class_<PolicyOutcome>(m, "PolicyOutcome")
      .def_readonly("plan", &PolicyOutcome::plan)
      .def_readonly("total_cost", &PolicyOutcome::total_cost)
      .def_readonly("per_job", &PolicyOutcome::per_job)
      .def_readonly("wall_seconds", &PolicyOutcome::wall_seconds)
      .def_readonly("infeasible", &PolicyOutcome::infeasible)
      .def_readonly("postponed", &PolicyOutcome::postponed);

  m.def("brute_force", &brute_force, py::arg("problem"),
        py::arg("cap") = std::uint64_t{10'000'000},
        py::arg("enforce_constraints") = false);
  m.def("performance_policy", &performance_policy);
  m.def("economic_policy", &economic_policy);
  m.def("act_greedy", &act_greedy, py::arg("problem"), py::arg("passes") = 3);
  m.def("plan_once", &plan_once, py::arg("problem"), py::arg("policy"),
        py::arg("config"), py::arg("brute_cap") = std::uint64_t{10'000'000},
        py::arg("brute_enforce_constraints") = false);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("tiers", &Scenario::tiers)
      .def_readwrite("datasets", &Scenario::datasets)
      .def_readwrite("jobs", &Scenario::jobs)
      .def_readwrite("env", &Scenario::env)
      .def_readwrite("planner", &Scenario::planner)
      .def_readwrite("horizon", &Scenario::horizon)
      .def_readwrite("slot_seconds", &Scenario::slot_seconds)
      .def_readwrite("seed", &Scenario::seed)
      .def_readwrite("budget_basis", &Scenario::budget_basis)
      .def_readwrite("queue_unit", &Scenario::queue_unit)
      .def_readwrite("brute_force_cap", &Scenario::brute_force_cap)
      .def_readwrite("brute_force_enforce_constraints",
                     &Scenario::brute_force_enforce_constraints)
      .def("validate", &Scenario::validate)
      .def("problem", [](const Scenario& s) {
        return Problem(s.tiers, s.datasets, s.jobs, s.env, s.budget_basis);
      });

  py::class_<JobSlotRecord>(m, "JobSlotRecord")
      .def_readonly("evaluable", &JobSlotRecord::evaluable)
      .def_readonly("executed", &JobSlotRecord::executed)
      .def_readonly("execution_postponed", &JobSlotRecord::execution_postponed)
      .def_readonly("time_value", &JobSlotRecord::time_value)
      .def_readonly("money_value", &JobSlotRecord::money_value)
      .def_readonly("cost", &JobSlotRecord::cost)
      .def_readonly("time_ok", &JobSlotRecord::time_ok)
      .def_readonly("money_ok", &JobSlotRecord::money_ok);

  py::class_<PlanEntryRecord>(m, "PlanEntryRecord")
      .def_readonly("dataset", &PlanEntryRecord::dataset)
      .def_readonly("tier", &PlanEntryRecord::tier)
      .def_readonly("fraction", &PlanEntryRecord::fraction);

  py::class_<SlotRecord>(m, "SlotRecord")
      .def_readonly("slot", &SlotRecord::slot)
      .def_readonly("plan", &SlotRecord::plan)
      .def_readonly("jobs", &SlotRecord::jobs)
      .def_readonly("storage_backlog", &SlotRecord::storage_backlog)
      .def_readonly("job_backlog", &SlotRecord::job_backlog)
      .def_readonly("arrivals", &SlotRecord::arrivals)
      .def_readonly("removals", &SlotRecord::removals)
      .def_readonly("placed_mass", &SlotRecord::placed_mass)
      .def_readonly("generated", &SlotRecord::generated)
      .def_readonly("lyapunov_start", &SlotRecord::lyapunov_start)
      .def_readonly("lyapunov_end", &SlotRecord::lyapunov_end)
      .def_readonly("drift", &SlotRecord::drift)
      .def_readonly("total_cost", &SlotRecord::total_cost)
      .def_readonly("theorem_rhs", &SlotRecord::theorem_rhs)
      .def_readonly("postponed_datasets", &SlotRecord::postponed_datasets)
      .def_readonly("expired_datasets", &SlotRecord::expired_datasets)
      .def_readonly("executed_jobs", &SlotRecord::executed_jobs);

  py::class_<SimulationSummary>(m, "SimulationSummary")
      .def_readonly("time_avg_cost", &SimulationSummary::time_avg_cost)
      .def_readonly("time_avg_backlog", &SimulationSummary::time_avg_backlog)
      .def_readonly("leftover_pending", &SimulationSummary::leftover_pending);

  py::class_<SimulationTrace>(m, "SimulationTrace")
      .def_readonly("slots", &SimulationTrace::slots)
      .def_readonly("bounds", &SimulationTrace::bounds)
      .def_readonly("omega", &SimulationTrace::omega)
      .def_readonly("penalty_constant_sum", &SimulationTrace::penalty_constant_sum)
      .def_readonly("summary", &SimulationTrace::summary)
      .def_readonly("wall_seconds", &SimulationTrace::wall_seconds);

  m.def("run", &run, py::arg("scenario"), py::arg("policy"));

  py::class_<ComparisonJobCell>(m, "ComparisonJobCell")
      .def_readonly("job", &ComparisonJobCell::job)
      .def_readonly("time_value", &ComparisonJobCell::time_value)
      .def_readonly("money_value", &ComparisonJobCell::money_value)
      .def_readonly("time_ok", &ComparisonJobCell::time_ok)
      .def_readonly("money_ok", &ComparisonJobCell::money_ok)
      .def_readonly("evaluable", &ComparisonJobCell::evaluable);

  py::class_<ComparisonRow>(m, "ComparisonRow")
      .def_readonly("policy", &ComparisonRow::policy)
      .def_readonly("w_time", &ComparisonRow::w_time)
      .def_readonly("frequency", &ComparisonRow::frequency)
      .def_readonly("frequency_name", &ComparisonRow::frequency_name)
      .def_readonly("total_cost", &ComparisonRow::total_cost)
      .def_readonly("failed", &ComparisonRow::failed)
      .def_readonly("error", &ComparisonRow::error)
      .def_readonly("jobs", &ComparisonRow::jobs)
      .def_readonly("wall_seconds", &ComparisonRow::wall_seconds);

  m.def("compare", &compare);
  m.def("sweep", &sweep);

  m.def("table2_tiers", &table2_tiers);
  m.def("parse_scenario_text", &parse_scenario_text);
  m.def("load_scenario_file", [](const std::filesystem::path& path) {
    return load_scenario_file(path);
  });
  m.def("serialize_scenario", [](const Scenario& scenario) {
    return serialize_scenario(scenario).dump(2);
  });
  m.def("scenario_hash", &scenario_hash);
  m.def("render_trace_csv", &render_trace_csv);
  m.def("render_comparison_csv", &render_comparison_csv);

#ifdef TIERPLACE_VERSION
  m.attr("__version__") = TIERPLACE_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
