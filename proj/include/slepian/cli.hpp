#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slepian::cli {

// Runs the command-line interface. args excludes the program name.
// Data rows go to out, diagnostics and errors to err.
// Exit codes: 0 success, 1 validation failures, 2 usage errors,
// 3 numerical or resource failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace slepian::cli
