#include "gradmode/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

namespace gradmode {

namespace {

// Smallest pivot magnitude admitted during elimination; pivots closer to zero
// are replaced (sign preserved) so a shift at an exact eigenvalue of a leading
// minor cannot produce infinities. The solution is renormalized afterwards, so
// the replacement only redirects growth, it never corrupts accepted vectors.
constexpr double kPivMin =
    std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

double guard_pivot(double p) noexcept {
    if (std::abs(p) >= kPivMin) {
        return p;
    }
    return p < 0.0 ? -kPivMin : kPivMin;
}

// Uniform double in [-0.5, 0.5] from raw engine output. Distribution objects
// are implementation-defined, which would break byte-identical reruns across
// standard libraries; this mapping is fully specified.
double uniform_from_bits(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53 - 0.5;
}

double euclidean_norm(const std::vector<double>& v) noexcept {
    double sum = 0.0;
    for (double c : v) {
        sum += c * c;
    }
    return std::sqrt(sum);
}

// Modified Gram-Schmidt projection of v against each unit vector in basis.
void orthogonalize(std::vector<double>& v, const std::vector<const std::vector<double>*>& basis) {
    for (const auto* b : basis) {
        double dot = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            dot += v[i] * (*b)[i];
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] -= dot * (*b)[i];
        }
    }
}

// Partial-pivoting LU of (T - lambda I) for a symmetric tridiagonal T with
// uniform off-diagonal. Row swaps introduce one extra superdiagonal (u2).
struct ShiftedFactorization {
    std::vector<double> u0, u1, u2, mult;
    std::vector<bool> swapped;

    void factor(std::span<const double> diag, double e, double lambda) {
        const std::size_t n = diag.size();
        u0.assign(n, 0.0);
        u1.assign(n, 0.0);
        u2.assign(n, 0.0);
        mult.assign(n, 0.0);
        swapped.assign(n, false);

        double cur0 = diag[0] - lambda;  // running pivot-row entries
        double cur1 = n > 1 ? e : 0.0;
        double cur2 = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double next0 = diag[i + 1] - lambda;
            const double next1 = i + 2 < n ? e : 0.0;
            if (std::abs(e) > std::abs(cur0)) {
                // Pivot on the subdiagonal row.
                swapped[i] = true;
                u0[i] = e;
                u1[i] = next0;
                u2[i] = next1;
                const double m = cur0 / e;
                mult[i] = m;
                cur0 = cur1 - m * next0;
                cur1 = cur2 - m * next1;
                cur2 = 0.0;
            } else {
                u0[i] = guard_pivot(cur0);
                u1[i] = cur1;
                u2[i] = cur2;
                const double m = e / u0[i];
                mult[i] = m;
                cur0 = next0 - m * cur1;
                cur1 = next1 - m * cur2;
                cur2 = 0.0;
            }
        }
        u0[n - 1] = guard_pivot(cur0);
    }

    // Solves (T - lambda I) y = b in place.
    void solve(std::vector<double>& b) const {
        const std::size_t n = b.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (swapped[i]) {
                std::swap(b[i], b[i + 1]);
            }
            b[i + 1] -= mult[i] * b[i];
        }
        for (std::size_t i = n; i-- > 0;) {
            double acc = b[i];
            if (i + 1 < n) {
                acc -= u1[i] * b[i + 1];
            }
            if (i + 2 < n) {
                acc -= u2[i] * b[i + 2];
            }
            b[i] = acc / u0[i];
        }
    }
};

}  // namespace

double tridiagonal_norm(std::span<const double> diag, double offdiag) noexcept {
    double max_abs = 0.0;
    for (double d : diag) {
        max_abs = std::max(max_abs, std::abs(d));
    }
    return max_abs + 2.0 * std::abs(offdiag);
}

std::size_t sturm_count(std::span<const double> diag, double offdiag, double lambda) noexcept {
    const double e2 = offdiag * offdiag;
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        q = i == 0 ? diag[0] - lambda : diag[i] - lambda - e2 / q;
        if (std::abs(q) < kPivMin) {
            q = -kPivMin;  // an exact hit counts as below lambda
        }
        if (q < 0.0) {
            ++count;
        }
    }
    return count;
}

std::vector<double> lowest_eigenvalues(std::span<const double> diag, double offdiag,
                                       std::size_t k) {
    const std::size_t n = diag.size();
    k = std::min(k, n);
    std::vector<double> values;
    if (k == 0) {
        return values;
    }

    const auto [min_it, max_it] = std::minmax_element(diag.begin(), diag.end());
    double lo = *min_it - 2.0 * std::abs(offdiag);  // Gershgorin bounds
    const double hi_bound = *max_it + 2.0 * std::abs(offdiag);

    values.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        // Invariant: sturm_count(a) <= j < sturm_count(b). The previous
        // eigenvalue's lower edge remains a valid left bound for the next.
        double a = lo;
        double b = hi_bound;
        for (int iter = 0; iter < 200; ++iter) {
            const double width_tol =
                2.0 * std::numeric_limits<double>::epsilon() *
                std::max(std::abs(a), std::abs(b));
            if (b - a <= width_tol) {
                break;
            }
            const double mid = a + 0.5 * (b - a);
            if (mid <= a || mid >= b) {
                break;  // interval no longer representable
            }
            if (sturm_count(diag, offdiag, mid) >= j + 1) {
                b = mid;
            } else {
                a = mid;
            }
        }
        values.push_back(a + 0.5 * (b - a));
        lo = a;
    }
    return values;
}

std::vector<EigenPair> lowest_eigenpairs(std::span<const double> diag, double offdiag,
                                         std::size_t k, double cluster_tol) {
    const std::size_t n = diag.size();
    k = std::min(k, n);
    std::vector<EigenPair> pairs;
    if (k == 0) {
        return pairs;
    }

    const double norm = tridiagonal_norm(diag, offdiag);
    const std::vector<double> values = lowest_eigenvalues(diag, offdiag, k);
    const double cluster_gap = cluster_tol * std::max(norm, 1.0);

    ShiftedFactorization lu;
    pairs.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        // Vectors of eigenvalues within cluster_gap must be orthogonalized
        // explicitly; inverse iteration alone cannot separate them.
        std::vector<const std::vector<double>*> cluster;
        for (std::size_t p = j; p-- > 0;) {
            if (values[j] - values[p] > cluster_gap) {
                break;
            }
            cluster.push_back(&pairs[p].vector);
        }

        // Residual acceptance: solving (T - lambda) y = x with ||x|| = 1 leaves
        // the normalized iterate with residual 1/||y||. Inside a cluster the
        // attainable residual is bounded below by the cluster's spread, so the
        // threshold widens with it (still far below the 1e-8 * norm contract).
        const double cluster_width =
            cluster.empty() ? 0.0 : values[j] - values[j - cluster.size()];
        const double residual_tol = 1e-11 * norm + 4.0 * cluster_width + 1e-290;
        const double min_growth = 1.0 / residual_tol;

        std::mt19937_64 rng(0x6A09E667F3BCC908ULL ^
                            (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(j) + 1)));
        std::vector<double> x(n), y(n);
        bool accepted = false;
        for (int restart = 0; restart <= 50 && !accepted; ++restart) {
            // Perturb the shift a few ulps per restart, alternating sides, so
            // repeated failures walk away from a pathological pivot pattern.
            const double direction = restart % 2 == 0 ? 1.0 : -1.0;
            const double shift =
                values[j] + direction * static_cast<double>(restart) * 2.0 *
                                std::numeric_limits<double>::epsilon() * std::max(norm, 1.0);
            lu.factor(diag, offdiag, shift);

            for (double& c : x) {
                c = uniform_from_bits(rng());
            }
            orthogonalize(x, cluster);
            double nx = euclidean_norm(x);
            if (nx < 1e-8) {
                continue;  // start vector swallowed by the cluster; redraw
            }
            for (double& c : x) {
                c /= nx;
            }

            for (int iter = 0; iter < 8; ++iter) {
                y = x;
                lu.solve(y);
                orthogonalize(y, cluster);
                const double ny = euclidean_norm(y);
                if (!std::isfinite(ny) || ny == 0.0) {
                    break;  // restart with a perturbed shift
                }
                for (double& c : y) {
                    c /= ny;
                }
                x = y;
                if (ny >= min_growth) {
                    accepted = true;
                    break;
                }
            }
        }
        if (!accepted) {
            throw ConvergenceFailureError(
                "inverse iteration failed for eigenvalue " + std::to_string(j) +
                " (lambda = " + std::to_string(values[j]) + ") after 50 restarts");
        }
        pairs.push_back(EigenPair{values[j], std::move(x)});
        x.assign(n, 0.0);
    }
    return pairs;
}

}  // namespace gradmode
