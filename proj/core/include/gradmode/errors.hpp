#pragma once

// Exception hierarchy for the gradmode library. Everything thrown on purpose
// derives from gradmode::Error so callers can catch one base; the subclasses
// distinguish bad configuration (user-fixable input) from IO failures and from
// runtime/domain conditions detected while computing.

#include <stdexcept>
#include <string>

namespace gradmode {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid parameters or malformed configuration; the message names the
// offending field (e.g. "grid.n_points").
class ConfigError : public Error {
public:
    using Error::Error;
};

// Filesystem / stream failures, including unreadable or malformed data files.
class IoError : public Error {
public:
    using Error::Error;
};

// A material sample with eps <= 0 or mu <= 0; the mode equations divide by
// both, so this is fatal wherever it is detected.
class NonPositiveMaterialError : public Error {
public:
    using Error::Error;
};

// Evaluation outside a tabulated profile's domain (extrapolation is refused).
class OutOfDomainError : public Error {
public:
    using Error::Error;
};

// Two per-grid-point arrays of different lengths were combined.
class LengthMismatchError : public Error {
public:
    using Error::Error;
};

// The iterative eigensolver exhausted its restart budget.
class ConvergenceFailureError : public Error {
public:
    using Error::Error;
};

// eps(x)*mu(x) deviates from a constant by more than the tolerance; carries
// the worst deviation and where it occurred.
class NotConstantIndexError : public Error {
public:
    NotConstantIndexError(const std::string& what, double deviation, double at_x)
        : Error(what), deviation_(deviation), at_x_(at_x) {}

    [[nodiscard]] double deviation() const noexcept { return deviation_; }
    [[nodiscard]] double at_x() const noexcept { return at_x_; }

private:
    double deviation_;
    double at_x_;
};

// Two spectra that must share a grid and free-space wavenumber do not.
class ShiftMismatchError : public Error {
public:
    using Error::Error;
};

}  // namespace gradmode
