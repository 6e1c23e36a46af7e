#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace lottie {

/// Runs one `lottie_tok` invocation; `args` excludes the program name.
/// Exit codes: 0 success, 1 any file-level failure (or lint error), 2 usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// LOTTIE_TOK_THREADS when set to a positive integer, else the hardware count.
std::size_t worker_count();

}  // namespace lottie
