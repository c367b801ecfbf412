#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace boxzeta::cli {

enum ExitCode : int { ok = 0, usage_error = 1, verification_failed = 2 };

// Runs one command line (args excludes the program name). Data goes to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace boxzeta::cli
