#pragma once

#include <stdexcept>
#include <string>

namespace kgy {

/// Square-root argument of the parameter cascade went negative. Carries the
/// name of the offending constant and its value so callers can bracket the
/// physical region explicitly instead of chasing NaNs.
class ComplexBranchError : public std::runtime_error {
public:
    ComplexBranchError(std::string which, double value)
        : std::runtime_error("complex branch: " + which + " = " + std::to_string(value)),
          which_(std::move(which)), value_(value) {}

    const std::string& which() const { return which_; }
    double value() const { return value_; }

private:
    std::string which_;
    double value_;
};

/// The discriminant of an energy relation is negative: no real level exists
/// for the requested configuration.
class NoRealStateError : public std::runtime_error {
public:
    explicit NoRealStateError(double disc)
        : std::runtime_error("no real state: discriminant = " + std::to_string(disc)),
          disc_(disc) {}

    double disc() const { return disc_; }

private:
    double disc_;
};

/// Root refinement failed to reach the requested tolerances. Carries the best
/// bracket found.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(double lo, double hi, double residual)
        : std::runtime_error("root refinement did not converge in [" + std::to_string(lo) +
                             ", " + std::to_string(hi) + "], residual " + std::to_string(residual)),
          lo_(lo), hi_(hi), residual_(residual) {}

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double residual() const { return residual_; }

private:
    double lo_, hi_, residual_;
};

/// No bound state with the requested node count exists in the search window.
class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested state cannot be normalized (non-decaying exponent).
class NonNormalizableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace kgy
