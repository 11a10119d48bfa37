#pragma once

#include <string>
#include <vector>

namespace germ::cli {

/// Dispatches the germ command line. Exit codes: 0 success / all paths
/// PASS, 1 verification FAIL or UNDECIDED, 2 usage, parse, or type error.
int run(int argc, const char* const* argv);

}  // namespace germ::cli
