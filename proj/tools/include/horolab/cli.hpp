#pragma once

#include <iosfwd>

namespace horolab::cli {

/// Exit codes: 0 success, 1 verify failure, 2 validation or usage, 3 non-convergence, 4 resource guard.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace horolab::cli
