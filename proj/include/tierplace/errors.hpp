#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tierplace {

enum class Errc {
  schema_error,
  dangling_reference,
  degenerate_measurement,
  missing_placement,
  zero_workload_system,
  infeasible_scenario,
  search_space_too_large,
  degenerate_tier_pair,
  io_error,
};

std::string_view errc_name(Errc code);

// All failures carry a machine-readable code and the field/entity path that
// triggered them; what() is "[code] path: message".
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string path, const std::string& message)
      : std::runtime_error("[" + std::string(errc_name(code)) + "] " + path +
                           ": " + message),
        code_(code),
        path_(std::move(path)) {}

  Errc code() const { return code_; }
  const std::string& path() const { return path_; }

 private:
  Errc code_;
  std::string path_;
};

struct InfeasibleDataset {
  std::string dataset;
  std::string detail;  // per-job constraint explanation
};

class InfeasibleError : public Error {
 public:
  InfeasibleError(std::vector<InfeasibleDataset> items, long slot = -1)
      : Error(Errc::infeasible_scenario, items.empty() ? "" : items.front().dataset,
              describe(items, slot)),
        items_(std::move(items)),
        slot_(slot) {}

  const std::vector<InfeasibleDataset>& items() const { return items_; }
  long slot() const { return slot_; }

 private:
  static std::string describe(const std::vector<InfeasibleDataset>& items, long slot);
  std::vector<InfeasibleDataset> items_;
  long slot_;
};

}  // namespace tierplace
