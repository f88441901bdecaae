#pragma once

// Closed-form reference solutions used to validate the numerical pipeline.
//
// Oscillator: the GaussianSusyPair profile gives W = alpha x, so the shifted
// sectors are harmonic oscillators with
//   E_TE,n = 2 alpha (n+1),  E_TM,n = 2 alpha n,  beta^2 = n0^2 k0^2 - E.
// Eigenfunctions are Hermite functions of sqrt(alpha) x (level n in each
// sector's own potential; B+ maps TE level n onto TM level n+1).
//
// Poeschl-Teller: a TE potential -k0^2 - lambda(lambda+1) sech^2(x) (realized
// by eps = 1 + lambda(lambda+1) sech^2(x)/k0^2, mu = 1) has bound states
//   E_j = -k0^2 - (lambda - j)^2,  j = 0..lambda-1,  beta^2 = -E_j.

#include <cstddef>
#include <vector>

#include "gradmode/reduction.hpp"

namespace gradmode {

struct OscillatorOracle {
    double alpha = 0.0;
    double n0 = 0.0;
    double k0 = 0.0;
};

struct OracleLevel {
    std::size_t n = 0;
    double e_susy = 0.0;  // shifted energy, E_schr + n0^2 k0^2
    double beta_sq = 0.0;
};

// The n_levels lowest levels of one polarization, ascending in energy
// (descending in beta^2). beta^2 may be negative for high levels or small k0;
// such states are bound but evanescent.
[[nodiscard]] std::vector<OracleLevel> oscillator_spectrum(const OscillatorOracle& oracle,
                                                           Polarization pol,
                                                           std::size_t n_levels);

// Normalized eigenfunction of level n at x (Hermite function n of
// sqrt(alpha) x, L2-normalized over the real line). Stable to at least n = 30
// via log-space normalization. Requires alpha > 0.
[[nodiscard]] double oscillator_wavefunction(const OscillatorOracle& oracle, Polarization pol,
                                             std::size_t n, double x);

// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
[[nodiscard]] double hermite_polynomial(std::size_t n, double x);

struct PoschlTellerLevel {
    std::size_t j = 0;
    double e_schr = 0.0;
    double beta_sq = 0.0;
};

// Bound states of V = -k0^2 - lambda(lambda+1) sech^2(x), integer lambda >= 1,
// ascending in e_schr (the deepest state first).
[[nodiscard]] std::vector<PoschlTellerLevel> poschl_teller_bound_states(double k0,
                                                                        std::size_t lambda);

}  // namespace gradmode
