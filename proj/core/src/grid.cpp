#include "gradmode/grid.hpp"

#include <string>

namespace gradmode {

Grid::Grid(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), n_points_(n_points) {
    if (!(x_min < x_max)) {
        throw ConfigError("grid: x_min (" + std::to_string(x_min) +
                          ") must be smaller than x_max (" + std::to_string(x_max) + ")");
    }
    if (n_points < 16) {
        throw ConfigError("grid: n_points must be at least 16, got " +
                          std::to_string(n_points));
    }
    spacing_ = (x_max - x_min) / static_cast<double>(n_points - 1);
}

double Grid::point(std::size_t i) const noexcept {
    if (i + 1 == n_points_) {
        return x_max_;
    }
    return x_min_ + static_cast<double>(i) * spacing_;
}

std::vector<double> Grid::points() const {
    std::vector<double> xs(n_points_);
    for (std::size_t i = 0; i < n_points_; ++i) {
        xs[i] = point(i);
    }
    return xs;
}

}  // namespace gradmode
