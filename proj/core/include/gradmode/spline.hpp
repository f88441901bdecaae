#pragma once

// Natural cubic spline interpolation with analytic first and second
// derivatives. Used by tabulated material profiles, which need smooth
// derivatives up to second order for the effective-potential reduction.

#include <cstddef>
#include <vector>

#include "gradmode/errors.hpp"

namespace gradmode {

class NaturalCubicSpline {
public:
    NaturalCubicSpline() = default;

    // Knot positions must be strictly increasing, at least 4 of them.
    // Throws ConfigError otherwise, LengthMismatchError if sizes differ.
    NaturalCubicSpline(std::vector<double> x, std::vector<double> y);

    [[nodiscard]] double operator()(double x) const;
    [[nodiscard]] double derivative(double x) const;
    [[nodiscard]] double second_derivative(double x) const;

    [[nodiscard]] double x_min() const noexcept { return x_.front(); }
    [[nodiscard]] double x_max() const noexcept { return x_.back(); }
    [[nodiscard]] std::size_t size() const noexcept { return x_.size(); }

private:
    // Index of the knot interval containing x. Positions within a few ulp of
    // either end are clamped onto it; anything further out throws
    // OutOfDomainError (extrapolation is refused by design).
    [[nodiscard]] std::size_t interval(double& x) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives at knots; natural: m front/back = 0
};

}  // namespace gradmode
