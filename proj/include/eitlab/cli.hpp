// cli.hpp - the eitlab command-line front end.
//
//   eitlab <command> [--config FILE | --preset NAME] [--out FILE] [--format csv|json]
//
// Commands: sweep, windows, vg, evolve, ramp, preset-list. EITLAB_THREADS caps
// the sweep worker count. Exit status: 0 success, 1 validation or I/O error,
// 2 numerical abort.

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "eitlab/config.hpp"
#include "eitlab/table.hpp"

namespace eitlab {

inline constexpr std::string_view kToolName = "eitlab";
inline constexpr std::string_view kToolVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitNumerical = 2 };

/// Builds the result table of one command. Throws ConfigError,
/// ValidationError or NumericalError.
OutputTable build_table(std::string_view command, const RunConfig& config,
                        unsigned threads);

/// Runs a command and writes its table to config.output.path, or to `out`
/// when the path is empty. Diagnostics go to `err`.
int run(std::string_view command, const RunConfig& config, unsigned threads,
        std::ostream& out, std::ostream& err);

/// Parses an EITLAB_THREADS value: a positive integer, or nullopt.
std::optional<unsigned> parse_thread_count(std::string_view text);

/// Full command-line entry point.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace eitlab
