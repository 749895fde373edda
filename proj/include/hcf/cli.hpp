#ifndef HCF_CLI_HPP
#define HCF_CLI_HPP

#include <ostream>

namespace hcf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidationFailed = 2;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "HCF_OUTPUT_DIR";

/// Entry point of the `hcf_sim` tool: subcommands simulate, validate and
/// compare. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hcf::cli

#endif  // HCF_CLI_HPP
