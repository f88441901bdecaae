#include "gradmode/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gradmode {

std::string to_string(Polarization pol) {
    return pol == Polarization::TE ? "TE" : "TM";
}

EffectivePotential effective_potential(const MaterialProfile& profile, const Grid& grid,
                                       double k0, Polarization pol, PotentialForm form) {
    return effective_potential(profile.sample_on_grid(grid), grid, k0, pol, form);
}

EffectivePotential effective_potential(const std::vector<ProfileSample>& samples,
                                       const Grid& grid, double k0, Polarization pol,
                                       PotentialForm form) {
    if (!(k0 > 0.0)) {
        throw ConfigError("effective_potential: k0 must be positive, got " +
                          std::to_string(k0));
    }
    if (samples.size() != grid.n_points()) {
        throw LengthMismatchError("effective_potential: " + std::to_string(samples.size()) +
                                  " samples for a grid of " +
                                  std::to_string(grid.n_points()) + " points");
    }

    EffectivePotential potential;
    potential.polarization = pol;
    potential.form = form;
    potential.k0 = k0;
    potential.v.resize(samples.size());

    for (std::size_t i = 0; i < samples.size(); ++i) {
        const ProfileSample& s = samples[i];
        double v = -s.eps * s.mu * k0 * k0;
        if (form == PotentialForm::Full) {
            // Gradient terms from the substitution psi = field / sqrt(f):
            //   (f'/2f)^2 - (f'/2f)' = (3/4)(f'/f)^2 - f''/(2f),
            // written with the analytic derivatives so no numerical
            // differentiation of the profile is ever needed.
            const double f = pol == Polarization::TE ? s.mu : s.eps;
            const double df = pol == Polarization::TE ? s.dmu : s.deps;
            const double d2f = pol == Polarization::TE ? s.d2mu : s.d2eps;
            const double ratio = df / f;
            v += 0.75 * ratio * ratio - d2f / (2.0 * f);
        }
        potential.v[i] = v;
    }
    return potential;
}

std::vector<double> field_from_wavefunction(const std::vector<double>& psi,
                                            const std::vector<ProfileSample>& samples,
                                            Polarization pol) {
    if (psi.size() != samples.size()) {
        throw LengthMismatchError("field_from_wavefunction: psi has " +
                                  std::to_string(psi.size()) + " entries but " +
                                  std::to_string(samples.size()) + " samples given");
    }
    std::vector<double> field(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double f = pol == Polarization::TE ? samples[i].mu : samples[i].eps;
        field[i] = std::sqrt(f) * psi[i];
    }
    return field;
}

double beta_squared_from_eigenvalue(double e_schr) noexcept {
    return -e_schr;
}

bool is_guided(double e_schr, const EffectivePotential& potential) {
    // Bound relative to the boundary potential, and actually propagating.
    // On weak-gradient profiles the boundary potential is -eps mu k0^2, which
    // recovers the familiar beta^2 > max(boundary eps mu k0^2) criterion.
    const double barrier = std::min(potential.v.front(), potential.v.back());
    return e_schr < barrier && beta_squared_from_eigenvalue(e_schr) > 0.0;
}

}  // namespace gradmode
