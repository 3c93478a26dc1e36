#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccalc::cli {

// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kAssertionFailure = 1;
inline constexpr int kUsageError = 2;

// args[0] is the program name. Reports go to `out` (or to --output),
// diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ccalc::cli
