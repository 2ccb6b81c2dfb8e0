#pragma once

namespace ramanforge {

/// Exit codes of the command line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitIo = 2,
  kExitExternal = 3,
};

/// Parses `argv` and runs one subcommand; never throws.
int run_cli(int argc, const char* const* argv);

}  // namespace ramanforge
