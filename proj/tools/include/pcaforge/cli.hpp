#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcaforge::cli {

/// Exit codes shared by every command.
enum Exit : int {
    kSuccess = 0,
    kNegative = 1,
    kUnknown = 2,
    kUsage = 3,
};

/// Runs one invocation; args excludes the program name. Output goes to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcaforge::cli
