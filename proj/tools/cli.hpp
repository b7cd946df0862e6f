#pragma once

#include <atomic>
#include <iosfwd>
#include <string>
#include <vector>

namespace bgc::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,   // input verified as not a (complete) Beckett-Gray code
  kUsage = 2,
  kTruncated = 3,  // stopped by a budget or interrupt
};

// Runs one invocation. `args` excludes the program name. `cancel`, when set,
// is polled by long-running subcommands.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, const std::atomic<bool>* cancel = nullptr);

}  // namespace bgc::cli
