#include "gradmode/spline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gradmode {

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size()) {
        throw LengthMismatchError("spline: " + std::to_string(x_.size()) +
                                  " knots but " + std::to_string(y_.size()) + " values");
    }
    const std::size_t n = x_.size();
    if (n < 4) {
        throw ConfigError("spline: at least 4 knots required, got " + std::to_string(n));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(x_[i] < x_[i + 1])) {
            throw ConfigError("spline: knot positions must be strictly increasing (knot " +
                              std::to_string(i + 1) + ")");
        }
    }

    // Second derivatives M_i at the knots: natural conditions M_0 = M_{n-1} = 0
    // and a tridiagonal system for the interior, solved by the Thomas
    // algorithm (the system is strictly diagonally dominant).
    m_.assign(n, 0.0);
    const std::size_t interior = n - 2;
    std::vector<double> diag(interior), rhs(interior), lower(interior), upper(interior);
    for (std::size_t i = 0; i < interior; ++i) {
        const double h_prev = x_[i + 1] - x_[i];
        const double h_next = x_[i + 2] - x_[i + 1];
        lower[i] = h_prev / 6.0;
        diag[i] = (h_prev + h_next) / 3.0;
        upper[i] = h_next / 6.0;
        rhs[i] = (y_[i + 2] - y_[i + 1]) / h_next - (y_[i + 1] - y_[i]) / h_prev;
    }
    for (std::size_t i = 1; i < interior; ++i) {
        const double factor = lower[i] / diag[i - 1];
        diag[i] -= factor * upper[i - 1];
        rhs[i] -= factor * rhs[i - 1];
    }
    m_[interior] = rhs[interior - 1] / diag[interior - 1];
    for (std::size_t i = interior - 1; i > 0; --i) {
        m_[i] = (rhs[i - 1] - upper[i - 1] * m_[i + 1]) / diag[i - 1];
    }
}

std::size_t NaturalCubicSpline::interval(double& x) const {
    const double span = x_.back() - x_.front();
    const double slack = 4.0 * std::numeric_limits<double>::epsilon() *
                         std::max({std::abs(x_.front()), std::abs(x_.back()), span});
    if (x < x_.front()) {
        if (x < x_.front() - slack) {
            throw OutOfDomainError("spline: x = " + std::to_string(x) +
                                   " below domain start " + std::to_string(x_.front()));
        }
        x = x_.front();
    } else if (x > x_.back()) {
        if (x > x_.back() + slack) {
            throw OutOfDomainError("spline: x = " + std::to_string(x) +
                                   " above domain end " + std::to_string(x_.back()));
        }
        x = x_.back();
    }
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i > 0) {
        --i;
    }
    return std::min(i, x_.size() - 2);
}

double NaturalCubicSpline::operator()(double x) const {
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    const double a = x_[i + 1] - x;
    const double b = x - x_[i];
    return m_[i] * a * a * a / (6.0 * h) + m_[i + 1] * b * b * b / (6.0 * h) +
           (y_[i] / h - m_[i] * h / 6.0) * a + (y_[i + 1] / h - m_[i + 1] * h / 6.0) * b;
}

double NaturalCubicSpline::derivative(double x) const {
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    const double a = x_[i + 1] - x;
    const double b = x - x_[i];
    return -m_[i] * a * a / (2.0 * h) + m_[i + 1] * b * b / (2.0 * h) +
           (y_[i + 1] - y_[i]) / h - (m_[i + 1] - m_[i]) * h / 6.0;
}

double NaturalCubicSpline::second_derivative(double x) const {
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    return m_[i] * (x_[i + 1] - x) / h + m_[i + 1] * (x - x_[i]) / h;
}

}  // namespace gradmode
