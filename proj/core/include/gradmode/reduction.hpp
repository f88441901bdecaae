#pragma once

// Reduction of the TE/TM planar-waveguide mode equations to Schroedinger form.
//
// With E_y = sqrt(mu) psi (TE) or H_y = sqrt(eps) psi (TM) the mode equation
// becomes -psi'' + V(x) psi = E psi with E = -beta^2 and
//
//   V = -eps mu k0^2 + (f'/2f)^2 - (f'/2f)'      f = mu (TE), f = eps (TM)
//     = -eps mu k0^2 + (3/4)(f'/f)^2 - f''/(2f)
//
// The WeakGradient form drops the gradient terms, V = -eps mu k0^2.

#include <cstddef>
#include <string>
#include <vector>

#include "gradmode/grid.hpp"
#include "gradmode/profiles.hpp"

namespace gradmode {

enum class Polarization { TE, TM };

[[nodiscard]] std::string to_string(Polarization pol);

enum class PotentialForm { Full, WeakGradient };

// The sampled Schroedinger potential for one polarization at one k0.
struct EffectivePotential {
    Polarization polarization = Polarization::TE;
    PotentialForm form = PotentialForm::Full;
    double k0 = 0.0;
    std::vector<double> v;  // one value per grid point
};

// Samples the profile on the grid and assembles V. k0 > 0 required.
[[nodiscard]] EffectivePotential effective_potential(const MaterialProfile& profile,
                                                     const Grid& grid, double k0,
                                                     Polarization pol,
                                                     PotentialForm form = PotentialForm::Full);

// Same, from samples already taken on the grid (avoids re-evaluation).
[[nodiscard]] EffectivePotential effective_potential(const std::vector<ProfileSample>& samples,
                                                     const Grid& grid, double k0,
                                                     Polarization pol,
                                                     PotentialForm form = PotentialForm::Full);

// Maps psi back to the physical transverse field: E_y = sqrt(mu) psi (TE),
// H_y = sqrt(eps) psi (TM). Throws LengthMismatchError if sizes differ.
[[nodiscard]] std::vector<double> field_from_wavefunction(const std::vector<double>& psi,
                                                          const std::vector<ProfileSample>& samples,
                                                          Polarization pol);

// The propagation constant: beta^2 = -E_schr.
[[nodiscard]] double beta_squared_from_eigenvalue(double e_schr) noexcept;

// A mode is guided when it is bound relative to the boundary potential and
// actually propagates: E_schr < min(V at both endpoints) and beta^2 > 0. On
// weak-gradient profiles the first clause reduces to
// beta^2 > max(eps mu k0^2 at the endpoints).
[[nodiscard]] bool is_guided(double e_schr, const EffectivePotential& potential);

}  // namespace gradmode
