#pragma once

#include <string>
#include <vector>

namespace hmsrep::cli {

struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs the command line `args` (without the program name) and captures its
/// output. Exit codes: 0 success (including negative verdicts), 1 domain
/// refusal, 2 input error.
RunResult run(const std::vector<std::string>& args);

}  // namespace hmsrep::cli
