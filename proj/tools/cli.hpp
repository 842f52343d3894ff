#ifndef CAUSAL_SSD_TOOLS_CLI_HPP
#define CAUSAL_SSD_TOOLS_CLI_HPP

#include <iosfwd>

namespace causal_ssd::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInput = 2,
    kCapacity = 3,
    kNotAchievable = 4,
};

// Subcommands: plan, dce-curve, predict-bf, simulate. Returns the process exit status.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace causal_ssd::cli

#endif // CAUSAL_SSD_TOOLS_CLI_HPP
