#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coverlab {

// Entry point behind the coverlab binary; exposed so tests can drive the CLI
// in-process.  Returns the process exit code: 0 success, 2 when the run
// produced hypothesis-failure/vacuity-only output, 1 on error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coverlab
