#pragma once

#include <iosfwd>

namespace gwlp::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kParse = 2, kCapacity = 3 };

/// Entry point of the oagwlp tool. Data goes to `out` (or --output),
/// diagnostics to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gwlp::cli
