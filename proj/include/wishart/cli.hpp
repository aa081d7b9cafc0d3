#ifndef WISHART_CLI_HPP
#define WISHART_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wishart {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerification = 3;

/// Runs one command line (without the program name). Results go to out,
/// diagnostics to err.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wishart

#endif  // WISHART_CLI_HPP
