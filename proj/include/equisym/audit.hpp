#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace equisym {

/// A (g, x) pair at which a check was violated.
struct Witness {
  std::string element;
  std::string point;
  double violation = 0.0;
};

/// Outcome of an equivariance audit.  Serialises to
/// { instance, mode, pass, max_violation, witnesses[], seed, ... }.
struct AuditReport {
  std::string instance;
  std::string mode;
  bool pass = true;
  double max_violation = 0.0;
  double tolerance = 0.0;
  std::vector<Witness> witnesses;
  std::uint64_t seed = 0;
  std::size_t checked = 0;
  /// Statistical checks: per-pair p-values and the significance level used.
  std::vector<double> p_values;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  /// Sub-checks of a composite audit.
  std::vector<AuditReport> checks;
  nlohmann::json details = nlohmann::json::object();

  nlohmann::json to_json() const;
};

/// One observed (g, x) violation, used to assemble reports.
struct Observation {
  double violation = 0.0;
  std::string element;
  std::string point;
  bool skipped = false;
};

/// Fold per-pair observations (in index order) into a report: max violation, witnesses above
/// `tolerance` sorted worst first, capped at `max_witnesses`.
AuditReport summarize(std::string instance, std::string mode, const std::vector<Observation>& obs,
                      double tolerance, std::uint64_t seed, std::size_t max_witnesses = 10);

/// Composite report passing iff every part passes.
AuditReport combine(std::string instance, std::vector<AuditReport> parts, std::uint64_t seed = 0);

}  // namespace equisym
