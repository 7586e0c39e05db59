#pragma once

#include <stdexcept>
#include <string>

namespace fockbench {

// Two values live in incompatible spaces (dim or conjugation mismatch).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A documented operation precondition does not hold for the given inputs.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A scalar argument left its admissible domain.
struct RangeError : std::domain_error {
    using std::domain_error::domain_error;
};

// The requested computation cannot be performed exactly at the given cutoff.
struct ExactnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed construction parameters (overlapping arcs, bad permutations, ...).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace fockbench
