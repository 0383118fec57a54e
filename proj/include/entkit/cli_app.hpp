#pragma once

namespace entkit {

// Parses argv, runs one subcommand, writes the report to stdout or --out.
// Returns the process exit code: 0 success, 1 failed suite criteria,
// 2 argument or geometry problems, 3 resource limits, 4 numerical failures.
int run_cli(int argc, const char* const* argv);

}  // namespace entkit
