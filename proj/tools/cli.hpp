#pragma once

// In-process entry point of the liesym command line tool.

#include <iosfwd>
#include <string>
#include <vector>

namespace liesym::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kIo = 3 };

/// args excludes the program name. Output goes to `out` unless --output is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liesym::cli
