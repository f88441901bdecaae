#pragma once

// Eigensolver for real symmetric tridiagonal matrices with a uniform
// off-diagonal (the shape produced by a 3-point Laplacian plus a diagonal
// potential). Lowest eigenvalues by Sturm-sequence bisection, eigenvectors by
// inverse iteration with Gram-Schmidt orthogonalization inside near-degenerate
// clusters. Fully deterministic: fixed-seed start vectors, no threading.

#include <cstddef>
#include <span>
#include <vector>

#include "gradmode/errors.hpp"

namespace gradmode {

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector;  // Euclidean-normalized
};

// Gershgorin bound: max_i |d_i| + 2|e|, used as the scale for tolerances.
[[nodiscard]] double tridiagonal_norm(std::span<const double> diag, double offdiag) noexcept;

// Number of eigenvalues strictly below lambda (Sturm sequence count).
[[nodiscard]] std::size_t sturm_count(std::span<const double> diag, double offdiag,
                                      double lambda) noexcept;

// The k smallest eigenvalues, ascending, bisected to near machine precision.
// k is clamped to the dimension.
[[nodiscard]] std::vector<double> lowest_eigenvalues(std::span<const double> diag,
                                                     double offdiag, std::size_t k);

// The k smallest eigenpairs, ascending. Eigenvectors of eigenvalues closer
// than cluster_tol * norm are orthogonalized against each other. Throws
// ConvergenceFailureError if inverse iteration fails after 50 perturbed-shift
// restarts (not observed for any well-formed operator in the test suite).
[[nodiscard]] std::vector<EigenPair> lowest_eigenpairs(std::span<const double> diag,
                                                       double offdiag, std::size_t k,
                                                       double cluster_tol = 1e-9);

}  // namespace gradmode
