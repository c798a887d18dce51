#include "tierplace/scenario_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tierplace {

using json = nlohmann::ordered_json;

std::vector<StorageType> table2_tiers() {
  return {
      {"standard", "Standard", 0.0155, 0.0, 0.1, std::nullopt},
      {"low_frequency", "Low frequency", 0.0113, 0.0042, 0.05, std::nullopt},
      {"cold", "Cold", 0.0045, 0.0085, 0.02, std::nullopt},
      {"archive", "Archive", 0.015, 0.12, 0.005, std::nullopt},
  };
}

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& msg) {
  throw Error(Errc::schema_error, path, msg);
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) schema_fail(path + "." + key, "unknown field");
  }
}

const json& require_field(const json& obj, const std::string& path,
                          const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(path.empty() ? key : path + "." + key,
                                   "missing required field");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) schema_fail(path, "expected a number");
  return v.get<double>();
}

double number_field(const json& obj, const std::string& path, const char* key) {
  return as_number(require_field(obj, path, key), path + "." + key);
}

double number_field_or(const json& obj, const std::string& path, const char* key,
                       double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  return as_number(*it, path + "." + key);
}

long integer_field_or(const json& obj, const std::string& path, const char* key,
                      long fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) schema_fail(path + "." + key, "expected an integer");
  return it->get<long>();
}

std::string string_field(const json& obj, const std::string& path, const char* key) {
  const json& v = require_field(obj, path, key);
  if (!v.is_string()) schema_fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> string_list_field(const json& obj, const std::string& path,
                                           const char* key) {
  const json& v = require_field(obj, path, key);
  if (!v.is_array()) schema_fail(path + "." + key, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) {
      schema_fail(path + "." + key + "[" + std::to_string(i) + "]",
                  "expected a string");
    }
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

double frequency_field(const json& obj, const std::string& path) {
  const json& v = require_field(obj, path, "frequency");
  std::string p = path + ".frequency";
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    auto preset = frequency_preset(v.get<std::string>());
    if (!preset) schema_fail(p, "unknown frequency preset " + v.get<std::string>());
    return *preset;
  }
  schema_fail(p, "expected a number or preset name");
}

StorageType parse_tier(const json& obj, const std::string& path) {
  if (!obj.is_object()) schema_fail(path, "expected an object");
  reject_unknown(obj, path,
                 {"id", "name", "storage_price", "read_price", "speed", "validity"});
  StorageType tier;
  tier.id = string_field(obj, path, "id");
  tier.name = obj.contains("name") ? string_field(obj, path, "name") : tier.id;
  tier.storage_price = number_field(obj, path, "storage_price");
  tier.read_price = number_field(obj, path, "read_price");
  tier.speed = number_field(obj, path, "speed");
  if (obj.contains("validity")) {
    tier.validity = as_number(obj["validity"], path + ".validity");
  }
  return tier;
}

DataSet parse_dataset(const json& obj, const std::string& path) {
  if (!obj.is_object()) schema_fail(path, "expected an object");
  reject_unknown(obj, path, {"id", "size", "consumers", "origin"});
  DataSet ds;
  ds.id = string_field(obj, path, "id");
  ds.size = number_field(obj, path, "size");
  if (obj.contains("consumers")) {
    ds.consumers = string_list_field(obj, path, "consumers");
  }
  if (obj.contains("origin")) {
    std::string origin = string_field(obj, path, "origin");
    if (origin == "input") {
      ds.origin = DataSet::Origin::input;
    } else if (origin == "intermediate") {
      ds.origin = DataSet::Origin::intermediate;
    } else {
      schema_fail(path + ".origin", "expected input or intermediate");
    }
  }
  return ds;
}

JobProfile parse_job(const json& obj, const std::string& path) {
  if (!obj.is_object()) schema_fail(path, "expected an object");
  reject_unknown(obj, path,
                 {"id", "workload", "alpha", "nodes", "frequency", "desired_time",
                  "desired_money", "time_deadline", "money_budget", "w_time",
                  "w_money", "inputs", "intermediate_size"});
  JobProfile job;
  job.id = string_field(obj, path, "id");
  job.workload = number_field(obj, path, "workload");
  job.alpha = number_field(obj, path, "alpha");
  job.nodes = static_cast<int>(integer_field_or(obj, path, "nodes", 1));
  job.frequency = frequency_field(obj, path);
  job.desired_time = number_field(obj, path, "desired_time");
  job.desired_money = number_field(obj, path, "desired_money");
  job.time_deadline = number_field(obj, path, "time_deadline");
  job.money_budget = number_field(obj, path, "money_budget");
  job.w_time = number_field(obj, path, "w_time");
  job.w_money = number_field(obj, path, "w_money");
  job.inputs = string_list_field(obj, path, "inputs");
  job.intermediate_size = number_field_or(obj, path, "intermediate_size", 0.0);
  return job;
}

}  // namespace

Scenario parse_scenario(const nlohmann::json& document) {
  if (!document.is_object()) schema_fail("", "scenario must be a JSON object");
  const json doc = document;
  reject_unknown(doc, "",
                 {"version", "tiers", "datasets", "jobs", "env", "planner", "sim"});
  long version = integer_field_or(doc, "", "version", 1);
  if (version != 1) schema_fail("version", "unsupported schema version");

  Scenario scenario;

  const json& tiers = require_field(doc, "", "tiers");
  if (tiers.is_string()) {
    if (tiers.get<std::string>() != "table2") {
      schema_fail("tiers", "unknown tier preset " + tiers.get<std::string>());
    }
    scenario.tiers = table2_tiers();
  } else if (tiers.is_array()) {
    for (std::size_t j = 0; j < tiers.size(); ++j) {
      scenario.tiers.push_back(parse_tier(tiers[j], "tiers[" + std::to_string(j) + "]"));
    }
  } else {
    schema_fail("tiers", "expected an array or preset name");
  }

  const json& datasets = require_field(doc, "", "datasets");
  if (!datasets.is_array()) schema_fail("datasets", "expected an array");
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    scenario.datasets.push_back(
        parse_dataset(datasets[i], "datasets[" + std::to_string(i) + "]"));
  }

  const json& jobs = require_field(doc, "", "jobs");
  if (!jobs.is_array()) schema_fail("jobs", "expected an array");
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    scenario.jobs.push_back(parse_job(jobs[k], "jobs[" + std::to_string(k) + "]"));
  }

  const json& env = require_field(doc, "", "env");
  if (!env.is_object()) schema_fail("env", "expected an object");
  reject_unknown(env, "env", {"init_time_per_node", "compute_speed", "vm_price"});
  scenario.env.init_time_per_node = number_field(env, "env", "init_time_per_node");
  scenario.env.compute_speed = number_field(env, "env", "compute_speed");
  scenario.env.vm_price = number_field(env, "env", "vm_price");

  if (doc.contains("planner")) {
    const json& planner = doc["planner"];
    if (!planner.is_object()) schema_fail("planner", "expected an object");
    reject_unknown(planner, "planner",
                   {"max_iterations", "inner_iterations", "omega", "grid_step"});
    scenario.planner.max_iterations =
        static_cast<int>(integer_field_or(planner, "planner", "max_iterations", 1));
    scenario.planner.inner_iterations = static_cast<int>(
        integer_field_or(planner, "planner", "inner_iterations", 3));
    scenario.planner.penalty.omega =
        number_field_or(planner, "planner", "omega", 1.0);
    scenario.planner.grid_step =
        number_field_or(planner, "planner", "grid_step", 0.001);
  }

  if (doc.contains("sim")) {
    const json& sim = doc["sim"];
    if (!sim.is_object()) schema_fail("sim", "expected an object");
    reject_unknown(sim, "sim",
                   {"horizon", "slot_seconds", "seed", "budget_basis", "queue_unit",
                    "brute_force_cap", "brute_force_enforce_constraints"});
    scenario.horizon = integer_field_or(sim, "sim", "horizon", 1);
    scenario.slot_seconds = number_field_or(sim, "sim", "slot_seconds", 86400.0);
    scenario.seed =
        static_cast<std::uint64_t>(integer_field_or(sim, "sim", "seed", 0));
    if (sim.contains("budget_basis")) {
      std::string basis = string_field(sim, "sim", "budget_basis");
      if (basis == "per_execution") {
        scenario.budget_basis = BudgetBasis::per_execution;
      } else if (basis == "per_period") {
        scenario.budget_basis = BudgetBasis::per_period;
      } else {
        schema_fail("sim.budget_basis", "expected per_execution or per_period");
      }
    }
    if (sim.contains("queue_unit")) {
      std::string unit = string_field(sim, "sim", "queue_unit");
      if (unit == "gb") {
        scenario.queue_unit = QueueUnit::gb;
      } else if (unit == "fraction") {
        scenario.queue_unit = QueueUnit::fraction;
      } else {
        schema_fail("sim.queue_unit", "expected gb or fraction");
      }
    }
    scenario.brute_force_cap = static_cast<std::uint64_t>(
        integer_field_or(sim, "sim", "brute_force_cap", 10'000'000));
    if (sim.contains("brute_force_enforce_constraints")) {
      const json& v = sim["brute_force_enforce_constraints"];
      if (!v.is_boolean()) {
        schema_fail("sim.brute_force_enforce_constraints", "expected a boolean");
      }
      scenario.brute_force_enforce_constraints = v.get<bool>();
    }
  }

  // Declared consumer lists, when present, must match the job input lists.
  {
    std::vector<std::set<std::string>> derived(scenario.datasets.size());
    for (const auto& job : scenario.jobs) {
      for (const auto& input : job.inputs) {
        for (std::size_t i = 0; i < scenario.datasets.size(); ++i) {
          if (scenario.datasets[i].id == input) derived[i].insert(job.id);
        }
      }
    }
    for (std::size_t i = 0; i < scenario.datasets.size(); ++i) {
      if (scenario.datasets[i].consumers.empty()) continue;
      std::set<std::string> declared(scenario.datasets[i].consumers.begin(),
                                     scenario.datasets[i].consumers.end());
      if (declared != derived[i]) {
        schema_fail("datasets[" + std::to_string(i) + "].consumers",
                    "declared consumers disagree with job input lists");
      }
    }
  }

  scenario.validate();
  return scenario;
}

Scenario parse_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Errc::schema_error, "", std::string("invalid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::io_error, path.string(), "cannot open scenario file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str());
}

nlohmann::json serialize_scenario(const Scenario& scenario) {
  json doc;
  doc["version"] = 1;
  doc["tiers"] = json::array();
  for (const auto& tier : scenario.tiers) {
    json t;
    t["id"] = tier.id;
    t["name"] = tier.name;
    t["storage_price"] = tier.storage_price;
    t["read_price"] = tier.read_price;
    t["speed"] = tier.speed;
    if (tier.validity) t["validity"] = *tier.validity;
    doc["tiers"].push_back(std::move(t));
  }
  doc["datasets"] = json::array();
  for (const auto& ds : scenario.datasets) {
    json d;
    d["id"] = ds.id;
    d["size"] = ds.size;
    if (!ds.consumers.empty()) d["consumers"] = ds.consumers;
    d["origin"] = ds.origin == DataSet::Origin::input ? "input" : "intermediate";
    doc["datasets"].push_back(std::move(d));
  }
  doc["jobs"] = json::array();
  for (const auto& job : scenario.jobs) {
    json j;
    j["id"] = job.id;
    j["workload"] = job.workload;
    j["alpha"] = job.alpha;
    j["nodes"] = job.nodes;
    j["frequency"] = job.frequency;
    j["desired_time"] = job.desired_time;
    j["desired_money"] = job.desired_money;
    j["time_deadline"] = job.time_deadline;
    j["money_budget"] = job.money_budget;
    j["w_time"] = job.w_time;
    j["w_money"] = job.w_money;
    j["inputs"] = job.inputs;
    j["intermediate_size"] = job.intermediate_size;
    doc["jobs"].push_back(std::move(j));
  }
  doc["env"] = {{"init_time_per_node", scenario.env.init_time_per_node},
                {"compute_speed", scenario.env.compute_speed},
                {"vm_price", scenario.env.vm_price}};
  doc["planner"] = {{"max_iterations", scenario.planner.max_iterations},
                    {"inner_iterations", scenario.planner.inner_iterations},
                    {"omega", scenario.planner.penalty.omega},
                    {"grid_step", scenario.planner.grid_step}};
  doc["sim"] = {
      {"horizon", scenario.horizon},
      {"slot_seconds", scenario.slot_seconds},
      {"seed", scenario.seed},
      {"budget_basis", scenario.budget_basis == BudgetBasis::per_period
                           ? "per_period"
                           : "per_execution"},
      {"queue_unit",
       scenario.queue_unit == QueueUnit::fraction ? "fraction" : "gb"},
      {"brute_force_cap", scenario.brute_force_cap},
      {"brute_force_enforce_constraints", scenario.brute_force_enforce_constraints},
  };
  return doc;
}

std::string scenario_hash(const Scenario& scenario) {
  std::string text = serialize_scenario(scenario).dump();
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return std::string(buf);
}

std::string format_g9(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return std::string(buf);
}

std::string csv_field(const std::string& value) {
  bool needs_quotes = value.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

ResultFiles result_paths(const std::filesystem::path& out_dir) {
  return ResultFiles{
      out_dir / "summary.json",       out_dir / "trace.csv",
      out_dir / "trace_jobs.csv",     out_dir / "trace_plan.csv",
      out_dir / "trace_queues.csv",   out_dir / "comparison.csv",
      out_dir / "timings.csv",
  };
}

namespace {

// Round through %.9g so JSON output carries at most 9 significant digits.
double g9(double value) { return std::strtod(format_g9(value).c_str(), nullptr); }

json plan_entries_json(const std::vector<StorageType>& tiers,
                       const std::vector<PlanEntryRecord>& entries) {
  json out = json::array();
  for (const auto& e : entries) {
    out.push_back({{"dataset", e.dataset},
                   {"tier", tiers[e.tier].id},
                   {"fraction", g9(e.fraction)}});
  }
  return out;
}

json outcome_plan_json(const Scenario& scenario, const PlacementPlan& plan) {
  json out = json::array();
  for (std::size_t i = 0; i < plan.dataset_count(); ++i) {
    if (!plan.has_row(i)) continue;
    for (std::size_t j = 0; j < plan.tier_count(); ++j) {
      if (plan.entry(i, j) != 0.0) {
        out.push_back({{"dataset", plan.dataset_ids()[i]},
                       {"tier", scenario.tiers[j].id},
                       {"fraction", g9(plan.entry(i, j))}});
      }
    }
  }
  return out;
}

}  // namespace

std::string render_plan_summary(const Scenario& scenario, const PolicyOutcome& outcome,
                                Policy policy) {
  json doc;
  doc["command"] = "plan";
  doc["scenario_hash"] = scenario_hash(scenario);
  doc["policy"] = std::string(policy_name(policy));
  doc["total_cost"] = g9(outcome.total_cost);
  doc["infeasible"] = outcome.infeasible;
  doc["postponed"] = outcome.postponed;
  doc["jobs"] = json::array();
  for (std::size_t k = 0; k < scenario.jobs.size(); ++k) {
    const ConstraintReport& r = outcome.per_job[k];
    doc["jobs"].push_back({{"id", scenario.jobs[k].id},
                           {"time", g9(r.time_value)},
                           {"money", g9(r.money_value)},
                           {"time_ok", r.time_ok},
                           {"money_ok", r.money_ok}});
  }
  doc["plan"] = outcome_plan_json(scenario, outcome.plan);
  return doc.dump(2) + "\n";
}

std::string render_simulation_summary(const Scenario& scenario,
                                      const SimulationTrace& trace, Policy policy) {
  json doc;
  doc["command"] = "simulate";
  doc["scenario_hash"] = scenario_hash(scenario);
  doc["policy"] = std::string(policy_name(policy));
  doc["horizon"] = static_cast<long>(trace.slots.size());
  doc["time_avg_cost"] = g9(trace.summary.time_avg_cost);
  doc["time_avg_backlog"] = g9(trace.summary.time_avg_backlog);
  doc["omega"] = g9(trace.omega);
  doc["drift_bounds"] = {{"d_max", g9(trace.bounds.d_max)},
                         {"r_max", g9(trace.bounds.r_max)},
                         {"data_max", g9(trace.bounds.data_max)},
                         {"g_max", g9(trace.bounds.g_max)}};
  doc["leftover_pending"] = trace.summary.leftover_pending;
  return doc.dump(2) + "\n";
}

std::string render_trace_csv(const SimulationTrace& trace) {
  std::ostringstream out;
  out << "slot,total_cost,lyapunov_start,lyapunov_end,drift,theorem_rhs,"
         "storage_backlog_total,job_backlog_total,arrivals_total,removals_total,"
         "placed_total,generated_total,postponed,expired,executed\n";
  for (const auto& rec : trace.slots) {
    auto sum = [](const std::vector<double>& v) {
      double s = 0.0;
      for (double x : v) s += x;
      return s;
    };
    out << rec.slot << ',' << format_g9(rec.total_cost) << ','
        << format_g9(rec.lyapunov_start) << ',' << format_g9(rec.lyapunov_end) << ','
        << format_g9(rec.drift) << ',' << format_g9(rec.theorem_rhs) << ','
        << format_g9(sum(rec.storage_backlog)) << ',' << format_g9(sum(rec.job_backlog))
        << ',' << format_g9(sum(rec.arrivals)) << ',' << format_g9(sum(rec.removals))
        << ',' << format_g9(sum(rec.placed_mass)) << ','
        << format_g9(sum(rec.generated)) << ',' << rec.postponed_datasets.size()
        << ',' << rec.expired_datasets.size() << ',' << rec.executed_jobs.size()
        << '\n';
  }
  return out.str();
}

std::string render_trace_jobs_csv(const Scenario& scenario,
                                  const SimulationTrace& trace) {
  std::ostringstream out;
  out << "slot,job,evaluable,executed,execution_postponed,time,money,cost,"
         "time_ok,money_ok\n";
  for (const auto& rec : trace.slots) {
    for (std::size_t k = 0; k < rec.jobs.size(); ++k) {
      const JobSlotRecord& jr = rec.jobs[k];
      out << rec.slot << ',' << csv_field(scenario.jobs[k].id) << ','
          << (jr.evaluable ? 1 : 0) << ',' << (jr.executed ? 1 : 0) << ','
          << (jr.execution_postponed ? 1 : 0) << ',';
      if (jr.evaluable) {
        out << format_g9(jr.time_value) << ',' << format_g9(jr.money_value) << ','
            << format_g9(jr.cost) << ',' << (jr.time_ok ? 1 : 0) << ','
            << (jr.money_ok ? 1 : 0);
      } else {
        out << ",,,,";
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string render_trace_plan_csv(const SimulationTrace& trace) {
  std::ostringstream out;
  out << "slot,dataset,tier_index,fraction\n";
  for (const auto& rec : trace.slots) {
    for (const auto& e : rec.plan) {
      out << rec.slot << ',' << csv_field(e.dataset) << ',' << e.tier << ','
          << format_g9(e.fraction) << '\n';
    }
  }
  return out.str();
}

std::string render_trace_queues_csv(const Scenario& scenario,
                                    const SimulationTrace& trace) {
  std::ostringstream out;
  out << "slot,kind,id,backlog,inflow,outflow\n";
  for (const auto& rec : trace.slots) {
    for (std::size_t j = 0; j < rec.storage_backlog.size(); ++j) {
      out << rec.slot << ",tier," << csv_field(scenario.tiers[j].id) << ','
          << format_g9(rec.storage_backlog[j]) << ',' << format_g9(rec.arrivals[j])
          << ',' << format_g9(rec.removals[j]) << '\n';
    }
    for (std::size_t k = 0; k < rec.job_backlog.size(); ++k) {
      out << rec.slot << ",job," << csv_field(scenario.jobs[k].id) << ','
          << format_g9(rec.job_backlog[k]) << ',' << format_g9(rec.generated[k])
          << ',' << format_g9(rec.placed_mass[k]) << '\n';
    }
  }
  return out.str();
}

namespace {

std::string joined(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ';';
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string render_comparison_csv(const Scenario& scenario,
                                  const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "scenario_hash,policy,w_time,frequency,frequency_name,total_cost,failed,"
         "error,all_time_ok,all_money_ok,job_ids,job_times,job_moneys,"
         "job_time_ok,job_money_ok\n";
  std::string hash = scenario_hash(scenario);
  for (const auto& row : rows) {
    bool all_time = !row.failed;
    bool all_money = !row.failed;
    std::vector<std::string> ids;
    std::vector<std::string> times;
    std::vector<std::string> moneys;
    std::vector<std::string> time_ok;
    std::vector<std::string> money_ok;
    for (const auto& cell : row.jobs) {
      ids.push_back(cell.job);
      times.push_back(cell.evaluable ? format_g9(cell.time_value) : "");
      moneys.push_back(cell.evaluable ? format_g9(cell.money_value) : "");
      time_ok.push_back(cell.evaluable ? (cell.time_ok ? "1" : "0") : "");
      money_ok.push_back(cell.evaluable ? (cell.money_ok ? "1" : "0") : "");
      if (!cell.evaluable || !cell.time_ok) all_time = false;
      if (!cell.evaluable || !cell.money_ok) all_money = false;
    }
    out << hash << ',' << csv_field(row.policy) << ','
        << (row.w_time < 0.0 ? "" : format_g9(row.w_time)) << ','
        << (row.frequency < 0.0 ? "" : format_g9(row.frequency)) << ','
        << csv_field(row.frequency_name) << ','
        << (row.failed ? "" : format_g9(row.total_cost)) << ','
        << (row.failed ? 1 : 0) << ',' << csv_field(row.error) << ','
        << (all_time ? 1 : 0) << ',' << (all_money ? 1 : 0) << ','
        << csv_field(joined(ids)) << ',' << csv_field(joined(times)) << ','
        << csv_field(joined(moneys)) << ',' << csv_field(joined(time_ok)) << ','
        << csv_field(joined(money_ok)) << '\n';
  }
  return out.str();
}

std::string render_timings_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "policy,w_time,frequency,wall_seconds\n";
  for (const auto& row : rows) {
    out << csv_field(row.policy) << ','
        << (row.w_time < 0.0 ? "" : format_g9(row.w_time)) << ','
        << (row.frequency < 0.0 ? "" : format_g9(row.frequency)) << ','
        << format_g9(row.wall_seconds) << '\n';
  }
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, path.string(), "cannot open for writing");
  out << content;
  if (!out) throw Error(Errc::io_error, path.string(), "write failed");
}

}  // namespace tierplace
