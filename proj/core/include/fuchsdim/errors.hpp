#pragma once

#include <stdexcept>
#include <string>

namespace fuchsdim {

// Numeric environment failures. The CLI maps these to exit code 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Working precision is too small for the requested computation.
class PrecisionExhausted : public NumericError {
public:
    using NumericError::NumericError;
};

// A quantity exceeds the configured binary exponent range.
class ExponentOverflow : public NumericError {
public:
    using NumericError::NumericError;
};

// An iterative limit did not stabilise within its iteration cap.
class NonConvergence : public NumericError {
public:
    using NumericError::NumericError;
};

// A truncated computation cannot decide the question it was asked.
class Indeterminate : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A word-count or node budget would be exceeded.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A least-squares fit has no usable signal (e.g. saturated box counts).
class DegenerateFit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fuchsdim
