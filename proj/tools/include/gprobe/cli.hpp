#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gprobe::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUserError = 1;
inline constexpr int kExitInternal = 2;

/// Runs the `gprobe` command line. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gprobe::cli
