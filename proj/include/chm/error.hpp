#pragma once

#include <stdexcept>
#include <string>

namespace chm {

// Input violates a documented value constraint (non-unimodular entry, bad range).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A stated precondition of an operation does not hold.
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal postcondition failed: either a tolerance is misconfigured or a
// mathematical claim the code relies on was violated. Never swallowed.
struct inconsistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A search or classification met input that contradicts the expected
// classification. Carries enough context to reproduce the offending case.
struct counterexample_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally malformed external input (wrong dimension, bad JSON shape).
struct structural_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace chm
