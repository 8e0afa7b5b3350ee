#pragma once

#include <optional>
#include <string>

#include "mbd/config.hpp"

namespace mbd {

/// Exit codes shared by the command implementations and the binary:
/// 0 success (verify: all residuals under tolerance), 1 verification
/// failure, 2 config validation failure, 3 evaluation singularity.
enum ExitCode {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfigError = 2,
  kExitEvaluationError = 3,
};

int cmd_generate(const ScenarioConfig& cfg, const std::string& out_path);
int cmd_verify(const ScenarioConfig& cfg, const std::string& out_path);
int cmd_reconcile(const ScenarioConfig& cfg, const std::string& out_path);
int cmd_perturb(const ScenarioConfig& cfg, const std::string& out_path);

/// Parses the config, applies overrides, dispatches, and maps exceptions
/// onto exit codes; error text lands on stderr.
int run_command(const std::string& command, const Json& config,
                const std::string& out_path, std::optional<double> h_override,
                std::optional<int> order_override);

}  // namespace mbd
