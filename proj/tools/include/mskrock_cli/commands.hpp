#pragma once

#include "mskrock_cli/config.hpp"

#include "mskrock/problems.hpp"
#include "mskrock/trajectory.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mskrock::cli {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed; ///< overrides run.seed
  std::optional<unsigned> threads;   ///< overrides run.threads
};

/// Files written and in-run checks that failed (empty means success).
struct CommandResult {
  std::vector<std::filesystem::path> outputs;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Builds the [problem] section into a problem instance.
SplitSdeProblem make_problem(const RunConfig& cfg);
/// Builds the [method] section.
Method method_from(const RunConfig& cfg);
StageControl stage_control_from(const RunConfig& cfg);

CommandResult cmd_integrate(const RunConfig& cfg, const RunOptions& opts);
CommandResult cmd_converge(const RunConfig& cfg, const RunOptions& opts);
CommandResult cmd_stability_scan(const RunConfig& cfg, const RunOptions& opts);
CommandResult cmd_speedup(const RunConfig& cfg, const RunOptions& opts);
CommandResult cmd_certify(const RunConfig& cfg, const RunOptions& opts);

/// Full command line entry point. Returns 0 on success, 1 when in-run checks
/// fail (each printed as "FAIL <check>: <detail>" and listed in failures.txt),
/// 2 on configuration or input errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace mskrock::cli
