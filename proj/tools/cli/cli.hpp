#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bcsvm::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kParse = 3,
  kConfig = 4,
  kTraining = 5,
};

/// Runs one command line (args[0] is the program name). Reports and tables go to `out` unless a
/// file flag redirects them; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bcsvm::cli
