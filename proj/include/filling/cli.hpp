#pragma once

#include <iosfwd>

namespace filling::cli {

// Parses argv and runs one subcommand. Results go to `out` as a single line of
// JSON. Returns 0 on success, 1 on a domain error (reported as
// {"error": name, "message": ...}) and 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace filling::cli
