#pragma once

#include <stdexcept>
#include <string>

namespace pgv {

// Invalid user-supplied configuration: bad proportions, overlapping lag
// windows, a coding that does not tile the space, mismatched sizes.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown with diagnostic context (e.g. a covariance matrix
// that is not positive definite even after jitter).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an estimate is requested from data carrying no information
// about the quantity (e.g. every interval pair is the whole plane).
class NoInformationError : public std::runtime_error {
public:
    explicit NoInformationError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; message carries file name and 1-based row number.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pgv
