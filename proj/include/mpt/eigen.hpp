#pragma once

#include <vector>

#include "mpt/sym_matrix.hpp"

namespace mpt {

/// Eigenvalues sorted descending with matched orthonormal eigenvectors.
/// Sign convention: in every vector the entry of largest magnitude is
/// positive, ties broken by lowest index. This makes outputs reproducible.
struct EigenSystem {
    std::vector<double> values;
    std::vector<Vec> vectors; // vectors[t] pairs with values[t]

    int count() const { return static_cast<int>(values.size()); }
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Converges when the
/// off-diagonal Frobenius norm drops to tol * ||M||_F; capped at 100 sweeps
/// (NoConvergence beyond that). tol must lie in (0, 1e-4].
EigenSystem sym_eigen(const SymMatrix& m, double tol = 1e-11);

/// max_t |lambda_t|
double spectral_norm(const SymMatrix& m);

/// Sum of lambda_s v_s v_s^T over the k indices of largest |lambda| (ties by
/// smaller index).
SymMatrix rank_k_reconstruct(const EigenSystem& e, int k);

/// The k indices of largest |values| (ties by smaller index), in pick order.
std::vector<int> top_k_by_magnitude(const std::vector<double>& values, int k);

/// <x, H y>
double quad_form(const Vec& x, const SymMatrix& h, const Vec& y);

/// Canonical sign flip (largest-magnitude entry positive, ties lowest index).
void canonicalize_sign(Vec& v);

} // namespace mpt
