#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rampkit::cli {

// Runs one subcommand with argv-style arguments (program name excluded).
// Returns 0 on success, 2 on usage, config or data errors, 1 otherwise.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rampkit::cli
