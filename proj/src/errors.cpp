#include "tierplace/errors.hpp"

#include <sstream>

namespace tierplace {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::schema_error: return "SchemaError";
    case Errc::dangling_reference: return "DanglingReference";
    case Errc::degenerate_measurement: return "DegenerateMeasurement";
    case Errc::missing_placement: return "MissingPlacement";
    case Errc::zero_workload_system: return "ZeroWorkloadSystem";
    case Errc::infeasible_scenario: return "InfeasibleScenario";
    case Errc::search_space_too_large: return "SearchSpaceTooLarge";
    case Errc::degenerate_tier_pair: return "DegenerateTierPair";
    case Errc::io_error: return "IoError";
  }
  return "UnknownError";
}

std::string InfeasibleError::describe(const std::vector<InfeasibleDataset>& items,
                                      long slot) {
  std::ostringstream out;
  out << "no constraint-satisfying placement";
  if (slot >= 0) out << " at slot " << slot;
  for (const auto& it : items) {
    out << "; dataset " << it.dataset;
    if (!it.detail.empty()) out << " (" << it.detail << ")";
  }
  return out.str();
}

}  // namespace tierplace
