#pragma once

// Shared helpers for the test suite: small numeric utilities and samplers
// that turn closed-form reference solutions into grid vectors.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gradmode/grid.hpp"
#include "gradmode/oracles.hpp"

namespace testutil {

// Deterministic uniform doubles in [-1, 1). The raw-bit mapping (instead of
// std::uniform_real_distribution, whose output is implementation-defined)
// keeps fixture data identical on every standard library.
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-52 - 1.0;
    }

private:
    std::mt19937_64 engine_;
};

// A smooth strictly-positive material pair tabulated on [x_min, x_max]:
// eps and mu are exponentials of independent low-order Fourier series, so
// every derivative is bounded and both stay within [e^-2, e^2] or so.
struct SmoothTable {
    std::vector<double> x;
    std::vector<double> eps;
    std::vector<double> mu;
};

inline SmoothTable make_smooth_table(PortableRng& rng, double x_min, double x_max,
                                     std::size_t n_knots) {
    constexpr int kHarmonics = 4;
    double ae[kHarmonics], be[kHarmonics], am[kHarmonics], bm[kHarmonics];
    const double offset_e = 0.3 * rng.uniform();
    const double offset_m = 0.3 * rng.uniform();
    for (int m = 0; m < kHarmonics; ++m) {
        ae[m] = 0.25 * rng.uniform();
        be[m] = 0.25 * rng.uniform();
        am[m] = 0.25 * rng.uniform();
        bm[m] = 0.25 * rng.uniform();
    }

    const double length = x_max - x_min;
    SmoothTable table;
    table.x.resize(n_knots);
    table.eps.resize(n_knots);
    table.mu.resize(n_knots);
    for (std::size_t i = 0; i < n_knots; ++i) {
        const double x =
            x_min + length * static_cast<double>(i) / static_cast<double>(n_knots - 1);
        double log_eps = offset_e;
        double log_mu = offset_m;
        for (int m = 0; m < kHarmonics; ++m) {
            const double phase = 2.0 * M_PI * (m + 1) * (x - x_min) / length;
            const double damp = 1.0 / (m + 1);
            log_eps += damp * (ae[m] * std::cos(phase) + be[m] * std::sin(phase));
            log_mu += damp * (am[m] * std::cos(phase) + bm[m] * std::sin(phase));
        }
        table.x[i] = x;
        table.eps[i] = std::exp(log_eps);
        table.mu[i] = std::exp(log_mu);
    }
    return table;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

inline double max_abs(const std::vector<double>& a) {
    double worst = 0.0;
    for (double v : a) worst = std::max(worst, std::abs(v));
    return worst;
}

// Discrete L2 inner product sum(a_i b_i) h.
inline double inner_product(const std::vector<double>& a, const std::vector<double>& b,
                            double h) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s * h;
}

inline double l2_norm(const std::vector<double>& a, double h) {
    return std::sqrt(inner_product(a, a, h));
}

// Oracle eigenfunction sampled over a grid.
inline std::vector<double> sample_oracle_wavefunction(const gradmode::OscillatorOracle& oracle,
                                                      gradmode::Polarization pol, std::size_t n,
                                                      const gradmode::Grid& grid) {
    std::vector<double> psi(grid.n_points());
    for (std::size_t i = 0; i < grid.n_points(); ++i) {
        psi[i] = gradmode::oscillator_wavefunction(oracle, pol, n, grid.point(i));
    }
    return psi;
}

// Sign-aligned max-norm distance: min over the global sign of b.
inline double aligned_max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double plus = 0.0;
    double minus = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        plus = std::max(plus, std::abs(a[i] - b[i]));
        minus = std::max(minus, std::abs(a[i] + b[i]));
    }
    return std::min(plus, minus);
}

// A scratch directory under the current working directory, wiped on creation
// so reruns start clean.
inline std::filesystem::path fresh_dir(const std::string& name) {
    std::filesystem::path dir = std::filesystem::current_path() / "scratch" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace testutil
