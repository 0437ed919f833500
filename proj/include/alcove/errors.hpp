#pragma once

#include <stdexcept>
#include <string>

namespace alcove {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller violated a documented input contract.
struct precondition_error : error {
    using error::error;
};

// A parameter value sits on the excluded set where the construction breaks
// down.  The message names the violated value.
struct inadmissible_value_error : error {
    using error::error;
};

struct parse_error : error {
    using error::error;
};

// Interval-wide combinatorics turned out not to be constant across sample
// points.  Either the interval data is corrupted or arithmetic overflowed.
struct structural_instability_error : error {
    using error::error;
};

// An internal cross-check failed: results disagree with an identity that the
// construction guarantees.  Indicates a bug or a numerically hopeless input.
struct consistency_error : error {
    using error::error;
};

// Input lies outside the mathematical domain of the operation (e.g. a point
// outside the polytope handed to a routine defined only on it).
struct out_of_domain_error : error {
    using error::error;
};

// The operation only supports a restricted input pattern and the argument
// does not match it.
struct unsupported_pattern_error : error {
    using error::error;
};

}  // namespace alcove
