#include "gradmode/susy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gradmode {

namespace {

// sqrt for shifted energies: round-off can leave a paired level a hair
// negative; within 1e-12 that is noise and maps to 0. Larger negatives only
// arise from misuse (pairing with an enormous pair_tol) and are clamped too,
// so no NaN can ever propagate into a report.
double susy_sqrt(double e) noexcept {
    if (e <= 0.0) {
        return 0.0;
    }
    return std::sqrt(e);
}

// First derivative on the grid: central differences inside, one-sided
// second-order stencils at the ends.
std::vector<double> derivative_on_grid(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> df(n);
    const double inv_2h = 1.0 / (2.0 * h);
    df[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv_2h;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        df[i] = (f[i + 1] - f[i - 1]) * inv_2h;
    }
    df[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv_2h;
    return df;
}

double discrete_l2_norm(const std::vector<double>& v, double h) noexcept {
    double sum = 0.0;
    for (double c : v) {
        sum += c * c;
    }
    return std::sqrt(sum * h);
}

// Domain limits beyond which the profile cannot be evaluated (tabulated
// profiles refuse extrapolation; analytic kinds are unbounded).
struct DomainBounds {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

DomainBounds domain_bounds(const MaterialProfile& profile) {
    DomainBounds bounds;
    if (const auto* tab = std::get_if<TabulatedProfile>(&profile.kind())) {
        bounds.lo = tab->x_min();
        bounds.hi = tab->x_max();
    }
    return bounds;
}

enum class Candidate { SqrtEps, InvSqrtEps };

double candidate_value(const MaterialProfile& profile, Candidate which, double x) {
    const double eps = profile.evaluate(x).eps;
    return which == Candidate::SqrtEps ? std::sqrt(eps) : 1.0 / std::sqrt(eps);
}

// The spec of normalizability on a finite grid: the candidate has decayed to
// below 1e-4 of its maximum at both ends, and its L2 norm is stable (relative
// change <= 1e-3) when the domain is extended by 25%. The extension is clamped
// to the profile's evaluable domain; with no headroom the decay test decides.
bool normalizable_candidate(const MaterialProfile& profile, const Grid& grid,
                            Candidate which) {
    const std::size_t n = grid.n_points();
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = candidate_value(profile, which, grid.point(i));
    }
    double max_abs = 0.0;
    for (double v : values) {
        max_abs = std::max(max_abs, std::abs(v));
    }
    if (max_abs == 0.0) {
        return false;
    }
    if (std::abs(values.front()) > 1e-4 * max_abs ||
        std::abs(values.back()) > 1e-4 * max_abs) {
        return false;
    }

    const double h = grid.spacing();
    const double length = grid.x_max() - grid.x_min();
    const DomainBounds bounds = domain_bounds(profile);
    const auto side_points = [&](double limit, double sign) {
        const double headroom = sign > 0.0 ? limit - grid.x_max() : grid.x_min() - limit;
        const double wanted = 0.125 * length;
        const double usable = std::min(wanted, std::max(headroom, 0.0));
        return static_cast<std::size_t>(std::floor(usable / h + 1e-12));
    };

    double base_sq = 0.0;
    for (double v : values) {
        base_sq += v * v;
    }
    base_sq *= h;

    double extended_sq = base_sq;
    const std::size_t left = side_points(bounds.lo, -1.0);
    for (std::size_t i = 1; i <= left; ++i) {
        const double v = candidate_value(profile, which,
                                         grid.x_min() - static_cast<double>(i) * h);
        extended_sq += v * v * h;
    }
    const std::size_t right = side_points(bounds.hi, +1.0);
    for (std::size_t i = 1; i <= right; ++i) {
        const double v = candidate_value(profile, which,
                                         grid.x_max() + static_cast<double>(i) * h);
        extended_sq += v * v * h;
    }
    const double relative_growth =
        (std::sqrt(extended_sq) - std::sqrt(base_sq)) / std::sqrt(base_sq);
    return relative_growth <= 1e-3;
}

}  // namespace

ConstantIndexCheck check_constant_index(const MaterialProfile& profile, const Grid& grid,
                                        double tol) {
    if (!(tol > 0.0)) {
        throw ConfigError("check_constant_index: tol must be positive");
    }
    const std::size_t n = grid.n_points();
    std::vector<double> products(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const ProfileSample s = profile.evaluate(grid.point(i));
        products[i] = s.eps * s.mu;
        mean += products[i];
    }
    mean /= static_cast<double>(n);

    ConstantIndexCheck check;
    check.n0 = std::sqrt(mean);
    for (std::size_t i = 0; i < n; ++i) {
        const double deviation = std::abs(products[i] - mean) / mean;
        if (deviation > check.max_relative_deviation) {
            check.max_relative_deviation = deviation;
            check.worst_x = grid.point(i);
        }
    }
    if (check.max_relative_deviation > tol) {
        throw NotConstantIndexError(
            "eps*mu deviates from a constant by " +
                std::to_string(check.max_relative_deviation) + " (relative) at x = " +
                std::to_string(check.worst_x) + ", tolerance " + std::to_string(tol),
            check.max_relative_deviation, check.worst_x);
    }
    return check;
}

Superpotential superpotential(const MaterialProfile& profile, const Grid& grid, double tol) {
    const ConstantIndexCheck check = check_constant_index(profile, grid, tol);

    const std::size_t n = grid.n_points();
    Superpotential w;
    w.n0 = check.n0;
    w.grid = grid;
    w.w.resize(n);
    w.dw.resize(n);

    double max_w = 0.0;
    double max_diff = 0.0;
    double worst_x = grid.point(0);
    for (std::size_t i = 0; i < n; ++i) {
        const ProfileSample s = profile.evaluate(grid.point(i));
        const double w_eps = s.deps / (2.0 * s.eps);
        const double w_mu = -s.dmu / (2.0 * s.mu);
        w.w[i] = w_eps;
        // W' = eps''/(2 eps) - 2 W^2, from differentiating W = eps'/(2 eps).
        w.dw[i] = s.d2eps / (2.0 * s.eps) - 2.0 * w_eps * w_eps;
        max_w = std::max({max_w, std::abs(w_eps), std::abs(w_mu)});
        const double diff = std::abs(w_eps - w_mu);
        if (diff > max_diff) {
            max_diff = diff;
            worst_x = grid.point(i);
        }
    }

    // Cross-check the two equivalent forms; W carries dimension 1/length, so
    // the comparison scale combines the observed magnitude with the domain.
    const double scale = std::max(max_w, 1.0 / (grid.x_max() - grid.x_min()));
    if (max_diff > tol * scale) {
        throw NotConstantIndexError(
            "superpotential forms eps'/(2 eps) and -mu'/(2 mu) disagree by " +
                std::to_string(max_diff) + " at x = " + std::to_string(worst_x) +
                " (tolerance " + std::to_string(tol * scale) + ")",
            max_diff, worst_x);
    }
    return w;
}

PartnerPotentials partner_potentials(const Superpotential& w, double k0) {
    if (!(k0 > 0.0)) {
        throw ConfigError("partner_potentials: k0 must be positive");
    }
    const double shift = -w.n0 * w.n0 * k0 * k0;
    PartnerPotentials partners;
    partners.v_te.resize(w.w.size());
    partners.v_tm.resize(w.w.size());
    for (std::size_t i = 0; i < w.w.size(); ++i) {
        const double w2 = w.w[i] * w.w[i];
        partners.v_te[i] = shift + w2 + w.dw[i];
        partners.v_tm[i] = shift + w2 - w.dw[i];
    }
    return partners;
}

std::vector<double> apply_ladder(LadderDirection direction, const std::vector<double>& psi,
                                 const Superpotential& w) {
    if (psi.size() != w.w.size()) {
        throw LengthMismatchError("apply_ladder: psi has " + std::to_string(psi.size()) +
                                  " entries, superpotential " + std::to_string(w.w.size()));
    }
    std::vector<double> result = derivative_on_grid(psi, w.grid.spacing());
    const double derivative_sign = direction == LadderDirection::BMinus ? 1.0 : -1.0;
    for (std::size_t i = 0; i < result.size(); ++i) {
        result[i] = derivative_sign * result[i] + w.w[i] * psi[i];
    }
    return result;
}

ZeroModeReport zero_modes(const Superpotential& w, const MaterialProfile& profile) {
    const Grid& grid = w.grid;
    const bool tm_ok = normalizable_candidate(profile, grid, Candidate::InvSqrtEps);
    const bool te_ok = normalizable_candidate(profile, grid, Candidate::SqrtEps);

    ZeroModeReport report;
    if (tm_ok == te_ok) {
        // Both false: broken SUSY. Both true cannot happen (the candidates are
        // pointwise reciprocals, up to n0), but classify conservatively.
        report.classification = SusyClassification::Broken;
        return report;
    }
    report.classification = tm_ok ? SusyClassification::ExactTMZeroMode
                                  : SusyClassification::ExactTEZeroMode;
    report.polarization = tm_ok ? Polarization::TM : Polarization::TE;

    const Candidate which = tm_ok ? Candidate::InvSqrtEps : Candidate::SqrtEps;
    std::vector<double> psi(grid.n_points());
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        psi[i] = candidate_value(profile, which, grid.point(i));
        sum_sq += psi[i] * psi[i];
    }
    const double scale = 1.0 / std::sqrt(sum_sq * grid.spacing());
    for (double& p : psi) {
        p *= scale;  // already positive everywhere: sign convention holds
    }
    report.psi = std::move(psi);
    return report;
}

SusyReport verify_susy(const MaterialProfile& profile, const ModeSpectrum& te,
                       const ModeSpectrum& tm, double constancy_tol, double pair_tol) {
    if (!(te.grid == tm.grid)) {
        throw ShiftMismatchError("verify_susy: TE and TM spectra use different grids");
    }
    if (te.k0 != tm.k0) {
        throw ShiftMismatchError("verify_susy: TE spectrum at k0 = " +
                                 std::to_string(te.k0) + " but TM at k0 = " +
                                 std::to_string(tm.k0));
    }
    if (!(pair_tol > 0.0)) {
        throw ConfigError("verify_susy: pair_tol must be positive");
    }

    const Grid& grid = te.grid;
    const Superpotential w = superpotential(profile, grid, constancy_tol);
    const ConstantIndexCheck check = check_constant_index(profile, grid, constancy_tol);
    const double shift = w.n0 * w.n0 * te.k0 * te.k0;
    const double h = grid.spacing();

    SusyReport report;
    report.n0 = w.n0;
    report.constancy_residual = check.max_relative_deviation;
    report.zero_mode = zero_modes(w, profile);
    report.classification = report.zero_mode.classification;

    // Shifted energies; states at E <= pair_tol are zero-mode candidates and
    // take no part in the degeneracy pairing.
    const auto shifted = [shift](const ModeSpectrum& spectrum) {
        std::vector<double> e(spectrum.modes.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] = spectrum.modes[i].e_schr + shift;
        }
        return e;
    };
    const std::vector<double> e_te = shifted(te);
    const std::vector<double> e_tm = shifted(tm);

    if (report.zero_mode.polarization.has_value()) {
        const auto& e_zero_side =
            *report.zero_mode.polarization == Polarization::TM ? e_tm : e_te;
        if (!e_zero_side.empty() && e_zero_side.front() <= pair_tol) {
            report.zero_mode_energy = e_zero_side.front();
        }
    }

    std::vector<bool> tm_used(e_tm.size(), false);
    for (std::size_t i = 0; i < e_tm.size(); ++i) {
        if (e_tm[i] <= pair_tol) {
            tm_used[i] = true;  // zero-mode candidate, excluded
        }
    }

    for (std::size_t i = 0; i < e_te.size(); ++i) {
        if (e_te[i] <= pair_tol) {
            continue;  // zero-mode candidate on the TE side
        }
        std::size_t best = e_tm.size();
        double best_gap = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < e_tm.size(); ++p) {
            if (tm_used[p]) {
                continue;
            }
            const double gap = std::abs(e_te[i] - e_tm[p]);
            if (gap < best_gap) {
                best_gap = gap;
                best = p;
            }
        }
        if (best == e_tm.size() || best_gap > pair_tol) {
            report.unpaired_te.push_back(te.modes[i].mode_index);
            continue;
        }
        tm_used[best] = true;

        SusyPair pair;
        pair.te_index = te.modes[i].mode_index;
        pair.tm_index = tm.modes[best].mode_index;
        pair.gap = best_gap;

        // Intertwining: B+ psi_TE should reproduce sqrt(E) psi_TM. The global
        // sign of an eigenvector is arbitrary, so align before comparing.
        std::vector<double> mapped = apply_ladder(LadderDirection::BPlus, te.modes[i].psi, w);
        const std::vector<double>& target = tm.modes[best].psi;
        double overlap = 0.0;
        for (std::size_t q = 0; q < mapped.size(); ++q) {
            overlap += mapped[q] * target[q];
        }
        const double aligned = overlap < 0.0 ? -1.0 : 1.0;
        const double root_e = susy_sqrt(e_te[i]);
        std::vector<double> residual(mapped.size());
        for (std::size_t q = 0; q < mapped.size(); ++q) {
            residual[q] = mapped[q] - aligned * root_e * target[q];
        }
        pair.intertwining_residual = discrete_l2_norm(residual, h);
        report.pairs.push_back(pair);
    }
    for (std::size_t p = 0; p < e_tm.size(); ++p) {
        if (!tm_used[p]) {
            report.unpaired_tm.push_back(tm.modes[p].mode_index);
        }
    }

    // Factorization residuals: the ladder compositions must reproduce the
    // shifted Hamiltonians on every computed mode. Compared on the interior
    // with the same 3-point kinetic stencil the modes were solved with.
    const auto factorization_residual = [&](const ModeSpectrum& spectrum,
                                            LadderDirection first, LadderDirection second,
                                            double dw_sign) {
        double worst = 0.0;
        for (const Mode& mode : spectrum.modes) {
            const std::vector<double> composed =
                apply_ladder(second, apply_ladder(first, mode.psi, w), w);
            const std::size_t n = mode.psi.size();
            std::vector<double> diff(n - 2);
            const double inv_h2 = 1.0 / (h * h);
            for (std::size_t q = 1; q + 1 < n; ++q) {
                const double laplacian =
                    (mode.psi[q + 1] - 2.0 * mode.psi[q] + mode.psi[q - 1]) * inv_h2;
                const double v = w.w[q] * w.w[q] + dw_sign * w.dw[q];
                diff[q - 1] = composed[q] - (-laplacian + v * mode.psi[q]);
            }
            worst = std::max(worst, discrete_l2_norm(diff, h));
        }
        return worst;
    };
    report.factorization_residual_te = factorization_residual(
        te, LadderDirection::BPlus, LadderDirection::BMinus, +1.0);
    report.factorization_residual_tm = factorization_residual(
        tm, LadderDirection::BMinus, LadderDirection::BPlus, -1.0);

    return report;
}

}  // namespace gradmode
