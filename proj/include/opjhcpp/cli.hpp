#pragma once

#include <string>
#include <vector>

namespace opjhcpp {

inline constexpr const char* kToolVersion = "0.1.0";

// Full command-line front end: subcommands solve, rpf, converge, report.
// Returns the process exit status (0 ok, 1 config/parse, 2 capacity,
// 3 I/O).
int run_cli(const std::vector<std::string>& args);

int run_cli(int argc, const char* const* argv);

}  // namespace opjhcpp
