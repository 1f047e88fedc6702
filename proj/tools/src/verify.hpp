#pragma once

#include "table.hpp"

namespace horolab::cli {

/// Runs the invariant suite into t; returns 0 if every check passes, 1 at the first failure.
int run_verify(Table& t);

}
