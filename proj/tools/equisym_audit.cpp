// equisym-audit: run equivariance audits from JSON configs or by demo name.
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 malformed config or usage error.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "equisym/config.hpp"
#include "equisym/parallel.hpp"

namespace {

using equisym::AuditConfig;

int execute(const AuditConfig& cfg, const std::string& out_flag) {
  const std::filesystem::path out = out_flag.empty() ? equisym::report_path(cfg) : std::filesystem::path(out_flag);
  const auto start = std::chrono::steady_clock::now();
  equisym::RunResult result;
  try {
    result = equisym::run_config(cfg);
  } catch (const equisym::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    nlohmann::json report = {{"schema_version", equisym::kSchemaVersion},
                             {"version", equisym::kVersion},
                             {"name", cfg.name},
                             {"seed", cfg.seed},
                             {"pass", false},
                             {"config", cfg.raw},
                             {"error", e.what()},
                             {"checks", nlohmann::json::array()}};
    equisym::write_report(report, out);
    return 2;
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.report["wall_time_s"] = elapsed;
  equisym::write_report(result.report, out);
  for (const auto& c : result.report["checks"])
    std::cout << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << "\n";
  std::cout << "report: " << out.string() << "\n";
  return result.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariance audits for symmetrised maps and kernels"};
  app.require_subcommand(1);
  int jobs = 0;
  app.add_option("--jobs,-j", jobs, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);

  std::string config_path, run_out;
  auto* run = app.add_subcommand("run", "Run the checks of a config file");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--out", run_out, "Report path (default from config or $EQUISYM_OUT_DIR)");

  std::string demo_name, demo_out;
  std::uint64_t seed = 0;
  auto* demo = app.add_subcommand("demo", "Run a bundled demo");
  demo->add_option("name", demo_name, "Demo name (see list-demos)")->required();
  demo->add_option("--seed", seed, "Master seed");
  demo->add_option("--out", demo_out, "Report path");

  auto* list = app.add_subcommand("list-demos", "List bundled demos");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  equisym::par::set_threads(jobs);

  try {
    if (*list) {
      for (const auto& name : equisym::demo_names())
        std::cout << name << "\t" << equisym::demo_description(name) << "\n";
      return 0;
    }
    if (*run) return execute(equisym::load_config(config_path), run_out);
    if (*demo)
      return execute(equisym::parse_config(equisym::demo_config(demo_name, seed),
                                           std::filesystem::current_path()),
                     demo_out);
  } catch (const equisym::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
