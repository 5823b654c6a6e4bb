#pragma once

#include <stdexcept>
#include <string>

namespace nmrenv {

/// Bad caller input: a precondition or invariant was violated.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation could not produce a trustworthy answer
/// (non-convergent quadrature, no fringes, too few samples).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nmrenv
