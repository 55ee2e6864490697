#pragma once

#include <iosfwd>

namespace ghl {

// Subcommands: space, gh, construct, classify, budget, converge.
// Returns 0 on success, 1 on a domain error (message "error: <Kind>: ..." on
// err), 2 on a usage error.
int cli_main(int argc, const char* const* argv);
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ghl
