#pragma once

// Command-line front end. Exit codes: 0 success, 1 numerical failure,
// 2 usage or validation error.

#include <iosfwd>

namespace lcdual::cli {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lcdual::cli
