#pragma once

// Supersymmetric structure of the TE/TM pair on constant-index profiles.
//
// When eps(x) mu(x) = n0^2 the two effective potentials are superpartners:
// with W = eps'/(2 eps) = -mu'/(2 mu),
//
//   V_TE/TM = -n0^2 k0^2 + W^2 +/- W'
//
// and the shifted Hamiltonians factorize, H_TE = B- B+ and H_TM = B+ B-, with
// the adjoint ladder pair B- = d/dx + W, B+ = -d/dx + W. Consequences checked
// here: zero modes psi_E ~ sqrt(eps), psi_H ~ 1/sqrt(eps); degeneracy of the
// nonzero spectra; intertwining B+ psi_TE,n = sqrt(E) psi_TM,n+1.

#include <cstddef>
#include <optional>
#include <vector>

#include "gradmode/grid.hpp"
#include "gradmode/profiles.hpp"
#include "gradmode/reduction.hpp"
#include "gradmode/spectral.hpp"

namespace gradmode {

// Result of the constant-index test: n0 = sqrt(mean eps*mu) and the worst
// relative deviation of eps*mu from n0^2 over the grid.
struct ConstantIndexCheck {
    double n0 = 0.0;
    double max_relative_deviation = 0.0;
    double worst_x = 0.0;
};

// Throws NotConstantIndexError (carrying deviation and location) if the
// relative deviation exceeds tol anywhere on the grid.
[[nodiscard]] ConstantIndexCheck check_constant_index(const MaterialProfile& profile,
                                                      const Grid& grid, double tol);

// W and W' sampled on the grid, with the cross-check between the eps-form and
// the mu-form already enforced.
struct Superpotential {
    double n0 = 0.0;
    Grid grid{0.0, 1.0, 16};
    std::vector<double> w;
    std::vector<double> dw;
};

// Builds W from the eps-form and verifies the mu-form agrees within tol
// (relative to max(|W|, 1/domain length)); requires the constant-index check
// to pass at the same tol.
[[nodiscard]] Superpotential superpotential(const MaterialProfile& profile, const Grid& grid,
                                            double tol);

// V_TE and V_TM from the superpotential; identical to the Full-form reduction
// potentials on a constant-index profile.
struct PartnerPotentials {
    std::vector<double> v_te;
    std::vector<double> v_tm;
};

[[nodiscard]] PartnerPotentials partner_potentials(const Superpotential& w, double k0);

enum class LadderDirection {
    BMinus,  // d/dx + W : annihilates the TM zero mode
    BPlus,   // -d/dx + W : annihilates the TE zero-mode candidate, maps TE -> TM
};

// Applies the ladder operator on the grid: central differences inside,
// one-sided second-order stencils at the ends.
[[nodiscard]] std::vector<double> apply_ladder(LadderDirection direction,
                                               const std::vector<double>& psi,
                                               const Superpotential& w);

enum class SusyClassification {
    ExactTMZeroMode,  // 1/sqrt(eps) normalizable: TM sector holds the E = 0 state
    ExactTEZeroMode,  // sqrt(eps) normalizable: TE sector holds it
    Broken,           // neither candidate normalizable
};

struct ZeroModeReport {
    SusyClassification classification = SusyClassification::Broken;
    // Present for the exact classes: the normalized zero mode on the grid,
    // built directly from sqrt(eps) or 1/sqrt(eps), not from the eigensolver.
    std::optional<std::vector<double>> psi;
    std::optional<Polarization> polarization;
};

// Decides normalizability of both closed-form candidates: the magnitude at the
// ends must fall below 1e-4 of the maximum and the discrete L2 norm must be
// stable under extending the domain by 25% (clamped to a tabulated profile's
// domain when extrapolation is impossible).
[[nodiscard]] ZeroModeReport zero_modes(const Superpotential& w, const MaterialProfile& profile);

// One degenerate (TE n, TM n+1) pair in the shifted spectra.
struct SusyPair {
    std::size_t te_index = 0;  // mode_index within the TE spectrum
    std::size_t tm_index = 0;
    double gap = 0.0;                     // |E_TE - E_TM|, shifted energies
    double intertwining_residual = 0.0;   // ||B+ psi_TE - sqrt(E) psi_TM|| sqrt(h), sign-aligned
};

struct SusyReport {
    double n0 = 0.0;
    double constancy_residual = 0.0;
    SusyClassification classification = SusyClassification::Broken;
    std::optional<double> zero_mode_energy;  // shifted energy of the detected E ~ 0 state
    ZeroModeReport zero_mode;
    std::vector<SusyPair> pairs;
    std::vector<std::size_t> unpaired_te;  // mode indices without a partner
    std::vector<std::size_t> unpaired_tm;  // (excludes the zero mode, reported above)
    double factorization_residual_te = 0.0;  // max over modes of ||(B-B+ - H_TE) psi|| sqrt(h)
    double factorization_residual_tm = 0.0;
};

// Full verification: shifts both spectra by n0^2 k0^2, excludes zero-mode
// candidates (E <= pair_tol), greedily pairs nearest energies within pair_tol,
// and computes intertwining and factorization residuals. Throws
// ShiftMismatchError unless the spectra share grid and k0.
[[nodiscard]] SusyReport verify_susy(const MaterialProfile& profile, const ModeSpectrum& te,
                                     const ModeSpectrum& tm, double constancy_tol,
                                     double pair_tol);

}  // namespace gradmode
