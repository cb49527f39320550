#pragma once

#include <iosfwd>

namespace fox::cli {

/// Exit codes: 0 success or criterion holds, 1 criterion fails, 2 usage/parse
/// or precondition error. JSON goes to `out` (or --output), a one-line human
/// summary to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fox::cli
