#pragma once

namespace mopt::cli {

/// Entry point behind the `mopt` binary. Subcommands: solve, bench, front,
/// check. Returns 0 on success, 1 on usage errors, 2 on runtime failures.
int cli_main(int argc, const char* const* argv);

}  // namespace mopt::cli
