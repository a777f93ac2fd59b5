#ifndef STABLEFRAC_ERRORS_HPP
#define STABLEFRAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stablefrac {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};

// A computation could not be decided at the current truncation order or
// working precision.  Callers are expected to retry with a larger budget.
struct Inconclusive : Error {
    explicit Inconclusive(const std::string& m) : Error(m) {}
};

struct NumericInconclusive : Inconclusive {
    explicit NumericInconclusive(const std::string& m) : Inconclusive(m) {}
};

// Branch lifting stalled; raise the truncation order or precision.
struct LiftStall : Inconclusive {
    explicit LiftStall(const std::string& m) : Inconclusive(m) {}
};

// Problems with the input itself.
struct InputError : Error {
    explicit InputError(const std::string& m) : Error(m) {}
};

struct SyntaxError : InputError {
    int line, col;
    SyntaxError(const std::string& m, int l, int c)
        : InputError(m + " at " + std::to_string(l) + ":" + std::to_string(c)),
          line(l), col(c) {}
};

// P and its reflection share a factor through the origin: the zero set is a
// curve, which this library rejects rather than analyzes.
struct CommonFactor : InputError {
    explicit CommonFactor(const std::string& m) : InputError(m) {}
};

struct NotStable : InputError {
    explicit NotStable(const std::string& m) : InputError(m) {}
};

struct NotStable1D : InputError {
    explicit NotStable1D(const std::string& m) : InputError(m) {}
};

struct NotMonicAtOrigin : InputError {
    explicit NotMonicAtOrigin(const std::string& m) : InputError(m) {}
};

struct ZeroNumerator : InputError {
    explicit ZeroNumerator(const std::string& m) : InputError(m) {}
};

struct SearchExhausted : Error {
    explicit SearchExhausted(const std::string& m) : Error(m) {}
};

struct IntegrationFailure : Error {
    explicit IntegrationFailure(const std::string& m) : Error(m) {}
};

} // namespace stablefrac

#endif
