#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace etaspec::cli {

enum ExitCode : int { ok = 0, domain_failure = 1, usage_error = 2 };

/// Runs one command line (args excludes the program name). Data goes to
/// `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace etaspec::cli
