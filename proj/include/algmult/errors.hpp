#pragma once

#include <stdexcept>
#include <string>

namespace algmult {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad dimensions, unparsable scalar, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// The path is identically singular: det ≡ 0, so its spectrum is the whole domain.
class DegeneratePath : public Error {
public:
    DegeneratePath() : Error("Σ(𝔏)=Ω: determinant vanishes identically") {}
    explicit DegeneratePath(const std::string& what) : Error(what) {}
};

/// A requested computation exceeds a documented combinatorial cap.
class FeasibilityError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed; indicates a bug, never a user error.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// Newton iteration failed to reach its tolerance.
class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string& what, double residual)
        : Error(what + " (final residual " + std::to_string(residual) + ")"), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

namespace detail {

[[noreturn]] inline void invariant_failed(const char* what) { throw InvariantViolation(what); }

}  // namespace detail

#define ALGMULT_ENSURE(cond, msg)                                   \
    do {                                                            \
        if (!(cond)) ::algmult::detail::invariant_failed(msg);      \
    } while (false)

}  // namespace algmult
