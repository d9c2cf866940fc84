#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace digitbin::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct Terminal {
  bool stdout_is_tty = false;
  bool color = false;
};

/// Runs one invocation. args excludes the program name. Output goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        Terminal term = {});

}  // namespace digitbin::cli
