#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spatialgraph::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kNegative = 1,  // check-degrees: not graphical
  kUsage = 2,
  kSamplerFailure = 3,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spatialgraph::cli
