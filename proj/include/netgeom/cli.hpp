#pragma once

#include <iosfwd>

namespace netgeom {

// Full command-line front end, stream-injected so tests can run it
// in-process.  Returns the process exit code: 0 success, 2 input/parse
// errors, 3 numerical or generation failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace netgeom
