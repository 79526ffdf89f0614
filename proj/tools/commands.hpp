#ifndef EULER_SPECTRA_TOOLS_COMMANDS_HPP
#define EULER_SPECTRA_TOOLS_COMMANDS_HPP

#include "config.hpp"

#include <ostream>
#include <string>

namespace euler_spectra::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kNumerical = 2,
    kVerificationFailed = 3,
};

/// Runs one subcommand, writing its artifact to cfg.output_path (or `out`).
/// Returns kSuccess or kVerificationFailed; library exceptions propagate.
int run_command(const std::string& command, const RunConfig& cfg, std::ostream& out);

} // namespace euler_spectra::cli

#endif
