#pragma once

// Material profiles eps(x), mu(x) for planar gradient waveguides. A profile
// knows its values and first two derivatives at any x; analytic kinds supply
// closed-form derivatives, tabulated kinds differentiate a natural cubic
// spline. Units are natural (c = 1), eps and mu are relative and must stay
// positive everywhere they are evaluated.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "gradmode/errors.hpp"
#include "gradmode/grid.hpp"
#include "gradmode/spline.hpp"

namespace gradmode {

// Values and derivatives of both materials at one position.
struct ProfileSample {
    double eps = 1.0;
    double mu = 1.0;
    double deps = 0.0;
    double dmu = 0.0;
    double d2eps = 0.0;
    double d2mu = 0.0;
};

// Uniform eps, mu; derivatives are exactly zero.
struct ConstantProfile {
    double eps;
    double mu;
};

// eps = n0^2 e^{alpha x^2}, mu = e^{-alpha x^2}: the canonical constant-index
// pair, eps*mu == n0^2 identically. alpha > 0 confines the TM sector.
struct GaussianSusyPair {
    double n0;
    double alpha;
};

// eps = eps_b + delta sech^2(x/width), mu = 1: a smooth slab-like channel
// (delta > 0) or trench (delta < 0).
struct SechSquaredEps {
    double eps_b;
    double delta;
    double width;
};

// eps and mu interpolated from a sorted table by natural cubic splines.
// Evaluation outside [x.front(), x.back()] throws OutOfDomainError.
class TabulatedProfile {
public:
    TabulatedProfile(std::vector<double> x, std::vector<double> eps,
                     std::vector<double> mu);

    [[nodiscard]] ProfileSample evaluate(double x) const;
    [[nodiscard]] double x_min() const noexcept { return eps_spline_.x_min(); }
    [[nodiscard]] double x_max() const noexcept { return eps_spline_.x_max(); }
    [[nodiscard]] std::size_t size() const noexcept { return eps_spline_.size(); }

private:
    NaturalCubicSpline eps_spline_;
    NaturalCubicSpline mu_spline_;
};

class MaterialProfile {
public:
    using Kind = std::variant<ConstantProfile, GaussianSusyPair, SechSquaredEps,
                              TabulatedProfile>;

    // Each factory validates its parameters: material values must be positive
    // (NonPositiveMaterialError), structural parameters sane (ConfigError).
    static MaterialProfile constant(double eps, double mu);
    static MaterialProfile gaussian_susy_pair(double n0, double alpha);
    static MaterialProfile sech_squared_eps(double eps_b, double delta, double width);
    static MaterialProfile tabulated(std::vector<double> x, std::vector<double> eps,
                                     std::vector<double> mu);

    // Values and derivatives at x. Throws NonPositiveMaterialError if either
    // material is <= 0 there (possible for spline undershoot), and
    // OutOfDomainError outside a tabulated domain.
    [[nodiscard]] ProfileSample evaluate(double x) const;

    // One sample per grid point, in grid order.
    [[nodiscard]] std::vector<ProfileSample> sample_on_grid(const Grid& grid) const;

    [[nodiscard]] const Kind& kind() const noexcept { return kind_; }

    template <typename T>
    [[nodiscard]] bool is() const noexcept {
        return std::holds_alternative<T>(kind_);
    }

private:
    explicit MaterialProfile(Kind kind) : kind_(std::move(kind)) {}

    Kind kind_;
};

// Reads a whitespace-separated table "x eps mu", one row per line, '#' starting
// a comment, blank lines ignored, rows sorted by x. Any problem with the file
// or its contents throws IoError naming the line.
[[nodiscard]] MaterialProfile load_tabulated(const std::string& path);
[[nodiscard]] MaterialProfile load_tabulated(std::istream& in,
                                             const std::string& origin = "<stream>");

}  // namespace gradmode
