#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vbs::cli {

/// Runs the vbshift command line.  Output goes to `out` unless --out names a
/// file; diagnostics go to `err`.  Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vbs::cli
