#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slopelab {

/// Runs the slopelab command line; `args` excludes the program name.
/// Returns 0 on success, 2 on usage errors and 1 on domain errors (or a
/// failed check), with a one-line JSON error record on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slopelab
