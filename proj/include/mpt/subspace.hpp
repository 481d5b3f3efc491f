#pragma once

#include <vector>

#include "mpt/eigen.hpp"
#include "mpt/sym_matrix.hpp"

namespace mpt {

/// d <= n orthonormal vectors in R^n.
struct OrthonormalBasis {
    int dim = 0;              // ambient dimension n
    std::vector<Vec> vectors; // each of length dim

    int count() const { return static_cast<int>(vectors.size()); }

    /// Validates sizes and pairwise inner products (within tol of delta_ij).
    static OrthonormalBasis from_vectors(std::vector<Vec> vs, double tol = 1e-9);
};

/// Canonical angles in [0, pi/2], ascending; cos(angles[i]) are the singular
/// values of U^T V in descending order.
struct PrincipalAngles {
    std::vector<double> angles;

    double max_angle() const { return angles.empty() ? 0.0 : angles.back(); }
};

PrincipalAngles principal_angles(const OrthonormalBasis& u, const OrthonormalBasis& v);

/// Rotates X within its own span so its vectors pair with Y's: with U S V^T the
/// SVD of X^T Y, returns X U V^T. The result spans the same subspace and
/// satisfies <xhat_i, y_i> >= 1 - delta^2 and |<xhat_i, y_j>| <= delta^2 (i != j)
/// where delta is the sine of the largest principal angle.
OrthonormalBasis align_basis(const OrthonormalBasis& x, const OrthonormalBasis& y);

/// Applies align_basis eigenspace by eigenspace: groups source.values into
/// equality clusters (|value difference| <= equality_tol) and aligns each
/// cluster's eigenvectors to the same-index vectors of target. Returns the
/// re-oriented copies of source.vectors; they remain eigenvectors of the same
/// matrix for the same eigenvalues.
std::vector<Vec> align_eigenvectors(const EigenSystem& source, const EigenSystem& target,
                                    double equality_tol);

namespace detail {

/// Economy SVD of a small dense d x d matrix G (row-major): G = U diag(s) V^T
/// with s descending. U and V are d x d orthogonal. Built on the Jacobi kernel
/// (eigendecomposition of G^T G with left vectors recovered and completed).
struct SmallSvd {
    std::vector<double> s;
    std::vector<Vec> u_cols;
    std::vector<Vec> v_cols;
};
SmallSvd svd_small(const std::vector<Vec>& g_rows);

} // namespace detail

} // namespace mpt
