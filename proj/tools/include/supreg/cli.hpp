#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace supreg::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,   // success, or a true verdict
  kNegative = 1,  // the run completed with a negative result
  kUsage = 2,     // malformed flags or input
  kInternal = 3,  // unexpected failure
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Smallest-height fraction n/d (|n|, d <= 64) congruent to v mod p, if any.
std::string rational_alias(std::uint64_t v, std::uint64_t p);

}  // namespace supreg::cli
