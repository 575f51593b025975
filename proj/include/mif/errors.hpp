#ifndef MIF_ERRORS_HPP
#define MIF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mif {

/// Bad inputs: malformed files, out-of-range parameters, dimension mismatches.
/// The CLI maps this family to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failures: non-convergence, loss of positive-definiteness.
/// The CLI maps this family to exit code 2.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised by support estimation when every axis is extrema-free.
/// Callers treat the signal as a trend remainder; never reaches the CLI.
class TrendSignalError : public std::runtime_error {
public:
    TrendSignalError() : std::runtime_error("trend signal: no support estimable") {}
};

} // namespace mif

#endif
