#pragma once

#include <ostream>

namespace gapscan {

/// Exit codes: 0 success, 1 unexpected or numerical failure,
/// 2 precondition / configuration failure (including a rejected certificate),
/// 3 I/O or parse failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gapscan
