#pragma once

#include <stdexcept>
#include <string>

namespace ridgelab {

// Precondition on an argument violated (order out of range, empty interval, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Time-domain sampling would fold wavelet energy past the Nyquist frequency.
class AliasingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An integral that does not converge for the requested parameters.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Signal carries no usable oscillation (all zeros, no finite phase).
class DegenerateSignalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A file could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input file content that does not parse or breaks the sampling contract.
class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace ridgelab
