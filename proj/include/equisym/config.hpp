#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "equisym/errors.hpp"

namespace equisym {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";
/// Environment variable naming the default report directory.
inline constexpr const char* kOutDirEnv = "EQUISYM_OUT_DIR";

/// Malformed or inconsistent audit configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct AuditConfig {
  nlohmann::json raw;
  std::string name;
  std::uint64_t seed = 0;
  /// Report path as written in the config (may be empty).
  std::string output;
  /// Directory that relative paths inside the config resolve against.
  std::filesystem::path base_dir;
};

AuditConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = ".");
AuditConfig load_config(const std::string& path);

struct RunResult {
  nlohmann::json report;
  bool pass = false;
};

/// Runs every check.  Each check's report appears under "checks", sorted by name.  Checks
/// that fail to build throw ConfigError; symmetrisation inputs that fail their own
/// equivariance check are reported as failed checks.
RunResult run_config(const AuditConfig& cfg);

/// Names accepted by demo_config.
std::vector<std::string> demo_names();
/// One-line description of a demo.
std::string demo_description(const std::string& name);
nlohmann::json demo_config(const std::string& name, std::uint64_t seed);

/// $EQUISYM_OUT_DIR, or the working directory.
std::filesystem::path default_output_dir();
/// Where the report of `cfg` goes when no explicit path is given.
std::filesystem::path report_path(const AuditConfig& cfg);

/// Serialised report without the wall-time field, for reproducibility comparisons.
std::string canonical_report(const nlohmann::json& report);

void write_report(const nlohmann::json& report, const std::filesystem::path& path);

}  // namespace equisym
