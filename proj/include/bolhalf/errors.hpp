#pragma once

#include <stdexcept>
#include <string>

namespace bolhalf {

// Bad input: malformed spec strings, violated preconditions. CLI exit code 2.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical infrastructure could not deliver the requested accuracy
// (quadrature, tail certificates, inversion, precision starvation). Exit code 3.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bolhalf
