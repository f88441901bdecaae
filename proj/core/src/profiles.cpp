#include "gradmode/profiles.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <utility>

namespace gradmode {

namespace {

void require_positive_pair(double eps, double mu, const std::string& where) {
    if (!(eps > 0.0) || !(mu > 0.0)) {
        throw NonPositiveMaterialError(where + ": eps = " + std::to_string(eps) +
                                       ", mu = " + std::to_string(mu) +
                                       " (both must be positive)");
    }
}

ProfileSample evaluate_constant(const ConstantProfile& p, double) {
    return ProfileSample{p.eps, p.mu, 0.0, 0.0, 0.0, 0.0};
}

ProfileSample evaluate_gaussian(const GaussianSusyPair& p, double x) {
    // eps = n0^2 e^{a x^2}, mu = e^{-a x^2}; the derivatives follow from the
    // chain rule: f' = 2 a x f, f'' = (2a + 4 a^2 x^2) f for a = +/- alpha.
    const double a = p.alpha;
    const double eps = p.n0 * p.n0 * std::exp(a * x * x);
    const double mu = std::exp(-a * x * x);
    ProfileSample s;
    s.eps = eps;
    s.mu = mu;
    s.deps = 2.0 * a * x * eps;
    s.dmu = -2.0 * a * x * mu;
    s.d2eps = (2.0 * a + 4.0 * a * a * x * x) * eps;
    s.d2mu = (-2.0 * a + 4.0 * a * a * x * x) * mu;
    return s;
}

ProfileSample evaluate_sech(const SechSquaredEps& p, double x) {
    const double u = x / p.width;
    const double sech = 1.0 / std::cosh(u);
    const double tanh = std::tanh(u);
    const double s2 = sech * sech;
    ProfileSample s;
    s.eps = p.eps_b + p.delta * s2;
    s.mu = 1.0;
    // d/dx sech^2(x/w) = -(2/w) sech^2 tanh;
    // d2/dx2 sech^2(x/w) = (2/w^2) sech^2 (2 tanh^2 - sech^2).
    s.deps = -(2.0 * p.delta / p.width) * s2 * tanh;
    s.d2eps = (2.0 * p.delta / (p.width * p.width)) * s2 * (2.0 * tanh * tanh - s2);
    return s;
}

}  // namespace

TabulatedProfile::TabulatedProfile(std::vector<double> x, std::vector<double> eps,
                                   std::vector<double> mu)
    : eps_spline_(x, std::move(eps)), mu_spline_(std::move(x), std::move(mu)) {}

ProfileSample TabulatedProfile::evaluate(double x) const {
    ProfileSample s;
    s.eps = eps_spline_(x);
    s.mu = mu_spline_(x);
    // Spline interpolation can undershoot between positive knots; a
    // non-positive material value is fatal wherever it appears.
    require_positive_pair(s.eps, s.mu, "tabulated profile at x = " + std::to_string(x));
    s.deps = eps_spline_.derivative(x);
    s.dmu = mu_spline_.derivative(x);
    s.d2eps = eps_spline_.second_derivative(x);
    s.d2mu = mu_spline_.second_derivative(x);
    return s;
}

MaterialProfile MaterialProfile::constant(double eps, double mu) {
    require_positive_pair(eps, mu, "constant profile");
    return MaterialProfile(ConstantProfile{eps, mu});
}

MaterialProfile MaterialProfile::gaussian_susy_pair(double n0, double alpha) {
    if (!(n0 > 0.0)) {
        throw NonPositiveMaterialError("gaussian_susy_pair: n0 = " + std::to_string(n0) +
                                       " (must be positive)");
    }
    return MaterialProfile(GaussianSusyPair{n0, alpha});
}

MaterialProfile MaterialProfile::sech_squared_eps(double eps_b, double delta, double width) {
    if (!(width > 0.0)) {
        throw ConfigError("sech_squared_eps: width must be positive, got " +
                          std::to_string(width));
    }
    // eps attains eps_b + delta at the center and tends to eps_b far away;
    // both extremes must stay positive.
    if (!(eps_b > 0.0) || !(eps_b + delta > 0.0)) {
        throw NonPositiveMaterialError("sech_squared_eps: eps ranges over [" +
                                       std::to_string(std::min(eps_b, eps_b + delta)) + ", " +
                                       std::to_string(std::max(eps_b, eps_b + delta)) +
                                       "] which is not positive");
    }
    return MaterialProfile(SechSquaredEps{eps_b, delta, width});
}

MaterialProfile MaterialProfile::tabulated(std::vector<double> x, std::vector<double> eps,
                                           std::vector<double> mu) {
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0.0)) {
            throw NonPositiveMaterialError("tabulated profile row " + std::to_string(i) +
                                           ": eps = " + std::to_string(eps[i]));
        }
    }
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (!(mu[i] > 0.0)) {
            throw NonPositiveMaterialError("tabulated profile row " + std::to_string(i) +
                                           ": mu = " + std::to_string(mu[i]));
        }
    }
    return MaterialProfile(TabulatedProfile(std::move(x), std::move(eps), std::move(mu)));
}

ProfileSample MaterialProfile::evaluate(double x) const {
    return std::visit(
        [x](const auto& kind) -> ProfileSample {
            using T = std::decay_t<decltype(kind)>;
            if constexpr (std::is_same_v<T, ConstantProfile>) {
                return evaluate_constant(kind, x);
            } else if constexpr (std::is_same_v<T, GaussianSusyPair>) {
                return evaluate_gaussian(kind, x);
            } else if constexpr (std::is_same_v<T, SechSquaredEps>) {
                return evaluate_sech(kind, x);
            } else {
                return kind.evaluate(x);
            }
        },
        kind_);
}

std::vector<ProfileSample> MaterialProfile::sample_on_grid(const Grid& grid) const {
    std::vector<ProfileSample> samples;
    samples.reserve(grid.n_points());
    for (std::size_t i = 0; i < grid.n_points(); ++i) {
        samples.push_back(evaluate(grid.point(i)));
    }
    return samples;
}

MaterialProfile load_tabulated(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open tabulated profile '" + path + "'");
    }
    return load_tabulated(in, path);
}

MaterialProfile load_tabulated(std::istream& in, const std::string& origin) {
    std::vector<double> xs, eps, mu;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream row(line);
        double x = 0.0, e = 0.0, m = 0.0;
        if (!(row >> x)) {
            continue;  // blank or comment-only line
        }
        if (!(row >> e >> m)) {
            throw IoError(origin + ":" + std::to_string(line_no) +
                          ": expected three columns (x eps mu)");
        }
        double trailing;
        if (row >> trailing) {
            throw IoError(origin + ":" + std::to_string(line_no) +
                          ": more than three columns");
        }
        if (!xs.empty() && !(x > xs.back())) {
            throw IoError(origin + ":" + std::to_string(line_no) +
                          ": x values must be strictly increasing");
        }
        if (!(e > 0.0) || !(m > 0.0)) {
            throw IoError(origin + ":" + std::to_string(line_no) +
                          ": eps and mu must be positive");
        }
        xs.push_back(x);
        eps.push_back(e);
        mu.push_back(m);
    }
    if (in.bad()) {
        throw IoError(origin + ": read failure");
    }
    if (xs.size() < 4) {
        throw IoError(origin + ": at least 4 data rows required, found " +
                      std::to_string(xs.size()));
    }
    try {
        return MaterialProfile::tabulated(std::move(xs), std::move(eps), std::move(mu));
    } catch (const Error& e) {
        throw IoError(origin + ": " + e.what());
    }
}

}  // namespace gradmode
