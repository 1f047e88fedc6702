#pragma once

#include <stdexcept>
#include <string>

namespace horolab {

/// A precondition on an argument was violated.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An iterative or adaptive computation did not reach its tolerance.
struct NonConvergence : std::runtime_error {
    NonConvergence(const std::string& what, double estimate, double error)
        : std::runtime_error(what), estimate(estimate), error(error) {}
    double estimate;
    double error;
};

/// A size or work guard tripped before the computation started.
struct ResourceGuard : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace horolab
