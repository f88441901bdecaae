#include "gradmode/oracles.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gradmode/errors.hpp"

namespace gradmode {

namespace {

void validate(const OscillatorOracle& oracle) {
    if (!(oracle.alpha > 0.0)) {
        throw ConfigError("oscillator oracle: alpha must be positive (confining pair), got " +
                          std::to_string(oracle.alpha));
    }
    if (!(oracle.n0 > 0.0) || !(oracle.k0 > 0.0)) {
        throw ConfigError("oscillator oracle: n0 and k0 must be positive");
    }
}

}  // namespace

std::vector<OracleLevel> oscillator_spectrum(const OscillatorOracle& oracle, Polarization pol,
                                             std::size_t n_levels) {
    validate(oracle);
    const double shift = oracle.n0 * oracle.n0 * oracle.k0 * oracle.k0;
    std::vector<OracleLevel> levels;
    levels.reserve(n_levels);
    for (std::size_t n = 0; n < n_levels; ++n) {
        OracleLevel level;
        level.n = n;
        // TM holds the E = 0 ground state; TE starts one rung up.
        const double quantum = static_cast<double>(pol == Polarization::TE ? n + 1 : n);
        level.e_susy = 2.0 * oracle.alpha * quantum;
        level.beta_sq = shift - level.e_susy;
        levels.push_back(level);
    }
    return levels;
}

double hermite_polynomial(std::size_t n, double x) {
    double h_prev = 1.0;  // H_0
    if (n == 0) {
        return h_prev;
    }
    double h = 2.0 * x;  // H_1
    for (std::size_t k = 1; k < n; ++k) {
        const double h_next = 2.0 * x * h - 2.0 * static_cast<double>(k) * h_prev;
        h_prev = h;
        h = h_next;
    }
    return h;
}

double oscillator_wavefunction(const OscillatorOracle& oracle, Polarization, std::size_t n,
                               double x) {
    validate(oracle);
    // Level n of either sector is Hermite function n in its own potential
    // (the sectors differ by a constant energy offset, not by shape).
    const double root_alpha = std::sqrt(oracle.alpha);
    const double xi = root_alpha * x;
    // Normalization 1/sqrt(2^n n! sqrt(pi)) assembled in log space so large n
    // stays finite; the x-space scaling contributes alpha^{1/4}.
    const double log_norm =
        -0.5 * (static_cast<double>(n) * std::numbers::ln2 +
                std::lgamma(static_cast<double>(n) + 1.0) +
                0.5 * std::log(std::numbers::pi));
    const double envelope = hermite_polynomial(n, xi) * std::exp(-0.5 * xi * xi);
    return std::sqrt(root_alpha) * envelope * std::exp(log_norm);
}

std::vector<PoschlTellerLevel> poschl_teller_bound_states(double k0, std::size_t lambda) {
    if (!(k0 > 0.0)) {
        throw ConfigError("poschl_teller_bound_states: k0 must be positive");
    }
    if (lambda < 1) {
        throw ConfigError("poschl_teller_bound_states: lambda must be at least 1");
    }
    std::vector<PoschlTellerLevel> levels;
    levels.reserve(lambda);
    for (std::size_t j = 0; j < lambda; ++j) {
        PoschlTellerLevel level;
        level.j = j;
        const double depth = static_cast<double>(lambda - j);
        level.e_schr = -k0 * k0 - depth * depth;
        level.beta_sq = -level.e_schr;
        levels.push_back(level);
    }
    return levels;
}

}  // namespace gradmode
