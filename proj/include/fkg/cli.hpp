#pragma once

namespace fkg::cli {

/// Entry point behind the fkg binary. Exit codes: 0 success, 2 validation or
/// I/O failure, 3 when a run completed but its scientific verdict failed.
int run_command(int argc, const char* const* argv);

} // namespace fkg::cli
