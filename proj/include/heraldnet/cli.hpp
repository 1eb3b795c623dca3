#ifndef HERALDNET_CLI_HPP
#define HERALDNET_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace heraldnet {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailedChecks = 1;
inline constexpr int kExitUsage = 2;

/// Parses "4", "2..6" or "4,6,8" into a list of party counts.
std::vector<int> parse_party_spec(const std::string& text);

/// Parses "START:STOP:STEP" into an inclusive radius grid.
std::vector<double> parse_radius_grid(const std::string& text);

/// Runs the tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heraldnet

#endif  // HERALDNET_CLI_HPP
