#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "conflab/config.hpp"

namespace conflab {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitViolation = 2, kExitNumerical = 3 };

struct RunResult {
    int exit_code = kExitOk;
    nlohmann::json report;                                   ///< full JSON report
    std::vector<std::pair<std::string, std::string>> csv;    ///< (file name, content)
    std::vector<std::string> summary;                        ///< human-readable lines
};

/// Runs one subcommand. Throws ConfigError for unknown ids or bad values;
/// numerical failures propagate as NumericalError / DataError.
RunResult run(const ExperimentConfig& cfg);

/// run() plus file output (<out>/<subcommand>.json and CSV series unless
/// json_only) and error-to-exit-code mapping. The summary goes to `log`,
/// errors to `err`.
int run_and_write(const ExperimentConfig& cfg, std::ostream& log, std::ostream& err);

}  // namespace conflab
