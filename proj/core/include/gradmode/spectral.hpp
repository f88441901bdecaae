#pragma once

// Discretization and solution of the reduced eigenproblem
// -psi'' + V psi = E psi on a uniform grid with Dirichlet ends: symmetric
// tridiagonal H with diag_i = 2/h^2 + v_i and uniform offdiag -1/h^2 over the
// interior points. Wavefunctions are reported on the full grid (zeros
// re-attached at the ends), L2-normalized as sum(psi^2) h = 1, sign fixed so
// the largest-magnitude entry is positive.

#include <cstddef>
#include <vector>

#include "gradmode/grid.hpp"
#include "gradmode/profiles.hpp"
#include "gradmode/reduction.hpp"

namespace gradmode {

// The interior-point discretization of -d2/dx2 + v.
struct DiscreteHamiltonian {
    std::vector<double> diag;  // interior points only: grid.n_points() - 2
    double offdiag = 0.0;      // uniform: -1/h^2
    double spacing = 0.0;
};

[[nodiscard]] DiscreteHamiltonian build_hamiltonian(const EffectivePotential& potential,
                                                    const Grid& grid);

// One solved mode of one polarization at one k0.
struct Mode {
    std::size_t mode_index = 0;  // node count of psi
    double e_schr = 0.0;
    double beta_sq = 0.0;
    std::size_t nodes = 0;
    bool guided = false;
    std::vector<double> psi;  // full grid, normalized, sign-fixed
};

struct ModeSpectrum {
    Polarization polarization = Polarization::TE;
    double k0 = 0.0;
    Grid grid{0.0, 1.0, 16};
    std::vector<Mode> modes;  // ascending in e_schr, i.e. descending in beta_sq
};

// Number of sign changes of psi, ignoring samples below 1e-9 * max|psi| so that
// Dirichlet zeros and tail round-off never register as nodes.
[[nodiscard]] std::size_t count_nodes(const std::vector<double>& psi);

// The max_modes lowest states regardless of guidedness (guided flag set on
// each); primarily for reporting layers that also want the rejected states.
[[nodiscard]] std::vector<Mode> compute_all_states(const MaterialProfile& profile,
                                                   const Grid& grid, double k0,
                                                   Polarization pol,
                                                   std::size_t max_modes);

// The guided modes among the max_modes lowest states of the Full-form
// potential, ascending in e_schr. May be empty (e.g. uniform profiles).
[[nodiscard]] ModeSpectrum compute_spectrum(const MaterialProfile& profile, const Grid& grid,
                                            double k0, Polarization pol,
                                            std::size_t max_modes);

}  // namespace gradmode
