#include "gradmode/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gradmode/tridiagonal.hpp"

namespace gradmode {

DiscreteHamiltonian build_hamiltonian(const EffectivePotential& potential, const Grid& grid) {
    if (potential.v.size() != grid.n_points()) {
        throw LengthMismatchError("build_hamiltonian: potential has " +
                                  std::to_string(potential.v.size()) +
                                  " samples for a grid of " +
                                  std::to_string(grid.n_points()) + " points");
    }
    const double h = grid.spacing();
    const double inv_h2 = 1.0 / (h * h);

    DiscreteHamiltonian ham;
    ham.spacing = h;
    ham.offdiag = -inv_h2;
    ham.diag.resize(grid.n_points() - 2);
    for (std::size_t i = 0; i < ham.diag.size(); ++i) {
        ham.diag[i] = 2.0 * inv_h2 + potential.v[i + 1];
    }
    return ham;
}

std::size_t count_nodes(const std::vector<double>& psi) {
    double max_abs = 0.0;
    for (double p : psi) {
        max_abs = std::max(max_abs, std::abs(p));
    }
    // Samples below the threshold (Dirichlet zeros, tail round-off) carry no
    // sign information and are skipped rather than counted as crossings.
    const double threshold = 1e-9 * max_abs;
    std::size_t nodes = 0;
    int last_sign = 0;
    for (double p : psi) {
        if (std::abs(p) <= threshold) {
            continue;
        }
        const int sign = p > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) {
            ++nodes;
        }
        last_sign = sign;
    }
    return nodes;
}

std::vector<Mode> compute_all_states(const MaterialProfile& profile, const Grid& grid,
                                     double k0, Polarization pol, std::size_t max_modes) {
    if (max_modes == 0) {
        throw ConfigError("compute_all_states: max_modes must be at least 1");
    }
    const std::vector<ProfileSample> samples = profile.sample_on_grid(grid);
    const EffectivePotential potential =
        effective_potential(samples, grid, k0, pol, PotentialForm::Full);
    const DiscreteHamiltonian ham = build_hamiltonian(potential, grid);

    std::vector<EigenPair> pairs = lowest_eigenpairs(ham.diag, ham.offdiag, max_modes);

    const double h = grid.spacing();
    std::vector<Mode> states;
    states.reserve(pairs.size());
    for (EigenPair& pair : pairs) {
        Mode mode;
        mode.e_schr = pair.value;
        mode.beta_sq = beta_squared_from_eigenvalue(pair.value);
        mode.guided = is_guided(pair.value, potential);

        // Re-attach the Dirichlet zeros, normalize to sum(psi^2) h = 1 and
        // orient so the largest-magnitude entry is positive.
        mode.psi.assign(grid.n_points(), 0.0);
        std::copy(pair.vector.begin(), pair.vector.end(), mode.psi.begin() + 1);
        double sum_sq = 0.0;
        double extreme = 0.0;
        for (double p : mode.psi) {
            sum_sq += p * p;
            if (std::abs(p) > std::abs(extreme)) {
                extreme = p;
            }
        }
        const double scale = (extreme < 0.0 ? -1.0 : 1.0) / std::sqrt(sum_sq * h);
        for (double& p : mode.psi) {
            p *= scale;
        }
        // A negative orientation flip would leave -0.0 at the Dirichlet ends,
        // which serializes as "-0"; pin them back to +0.0.
        mode.psi.front() = 0.0;
        mode.psi.back() = 0.0;

        mode.nodes = count_nodes(mode.psi);
        mode.mode_index = mode.nodes;
        states.push_back(std::move(mode));
    }
    return states;
}

ModeSpectrum compute_spectrum(const MaterialProfile& profile, const Grid& grid, double k0,
                              Polarization pol, std::size_t max_modes) {
    ModeSpectrum spectrum;
    spectrum.polarization = pol;
    spectrum.k0 = k0;
    spectrum.grid = grid;
    for (Mode& mode : compute_all_states(profile, grid, k0, pol, max_modes)) {
        if (mode.guided) {
            spectrum.modes.push_back(std::move(mode));
        }
    }
    return spectrum;
}

}  // namespace gradmode
