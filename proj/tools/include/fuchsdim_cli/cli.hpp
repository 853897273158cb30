#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>

namespace fuchsdim::cli {

enum ExitCode : int {
    kPass = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kNumeric = 3,
};

// Parses argv and runs one command. Progress and artifact paths go to out,
// diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::uint64_t fnv1a64(std::string_view text);

} // namespace fuchsdim::cli
