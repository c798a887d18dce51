#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tierplace/simulator.hpp"

namespace tierplace {

// Table-2 pricing preset: Standard / Low frequency / Cold / Archive.
std::vector<StorageType> table2_tiers();

// Strict scenario parsing: unknown fields are rejected, every cross-reference
// is validated, defaults are applied. Errors carry a field path.
Scenario parse_scenario(const nlohmann::json& document);
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario_file(const std::filesystem::path& path);

nlohmann::json serialize_scenario(const Scenario& scenario);

// FNV-1a over the canonical serialization, as a fixed-width hex string.
std::string scenario_hash(const Scenario& scenario);

// Result formatting. All result floats go through format_g9 (9 significant
// digits); CSV quoting follows RFC 4180.
std::string format_g9(double value);
std::string csv_field(const std::string& value);

struct ResultFiles {
  std::filesystem::path summary_json;
  std::filesystem::path trace_csv;
  std::filesystem::path trace_jobs_csv;
  std::filesystem::path trace_plan_csv;
  std::filesystem::path trace_queues_csv;
  std::filesystem::path comparison_csv;
  std::filesystem::path timings_csv;
};

ResultFiles result_paths(const std::filesystem::path& out_dir);

std::string render_plan_summary(const Scenario& scenario, const PolicyOutcome& outcome,
                                Policy policy);
std::string render_simulation_summary(const Scenario& scenario,
                                      const SimulationTrace& trace, Policy policy);
std::string render_trace_csv(const SimulationTrace& trace);
std::string render_trace_jobs_csv(const Scenario& scenario,
                                  const SimulationTrace& trace);
std::string render_trace_plan_csv(const SimulationTrace& trace);
std::string render_trace_queues_csv(const Scenario& scenario,
                                    const SimulationTrace& trace);
std::string render_comparison_csv(const Scenario& scenario,
                                  const std::vector<ComparisonRow>& rows);
std::string render_timings_csv(const std::vector<ComparisonRow>& rows);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace tierplace
