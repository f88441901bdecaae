#pragma once

// Uniform 1-D grid on [x_min, x_max]. All discrete operators in this library
// assume uniform spacing; the grid is the single source of truth for point
// placement so that every module samples identical coordinates.

#include <cstddef>
#include <vector>

#include "gradmode/errors.hpp"

namespace gradmode {

class Grid {
public:
    // Throws ConfigError unless x_min < x_max and n_points >= 16 (fewer
    // interior points than that cannot resolve even one smooth mode).
    Grid(double x_min, double x_max, std::size_t n_points);

    [[nodiscard]] double x_min() const noexcept { return x_min_; }
    [[nodiscard]] double x_max() const noexcept { return x_max_; }
    [[nodiscard]] std::size_t n_points() const noexcept { return n_points_; }
    [[nodiscard]] double spacing() const noexcept { return spacing_; }

    // i-th sample position; the last point is exactly x_max so that tabulated
    // profiles defined on the same interval never see a 1-ulp overshoot.
    [[nodiscard]] double point(std::size_t i) const noexcept;

    [[nodiscard]] std::vector<double> points() const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    double x_min_;
    double x_max_;
    std::size_t n_points_;
    double spacing_;
};

}  // namespace gradmode
