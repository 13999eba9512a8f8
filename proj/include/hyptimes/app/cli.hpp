#pragma once

#include <iosfwd>

namespace hyptimes::app {

enum ExitCode : int {
    exit_ok = 0,
    exit_runtime = 1,
    exit_usage = 2,
    exit_property_failure = 3,
};

/// Entry point of the `hyptimes` executable; subcommands times, classify, entropy and
/// properties. Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hyptimes::app
