#pragma once

#include <stdexcept>
#include <string>

namespace ellq {

// Domain-level failures; the CLI maps these to exit code 1.
struct singular_curve_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct degenerate_parameters_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct nonminimal_model_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Work-budget exhaustion (exit code 3): an incomplete factorization is a
// hard error, never an approximate answer.
struct factor_budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Reserved for "this should be unreachable" defects, e.g. two classifier
// rows matching the same prime.
struct internal_consistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace ellq
