#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qrflip::cli {

/// Runs one subcommand. `args` excludes the program name. Returns the process
/// exit status: 0 on success, 1 for a failed operation, 2 for usage errors.
/// Failures write a single "error: <Code>: <message>" line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qrflip::cli
