#include "mpt/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "mpt/errors.hpp"

namespace mpt {

OrthonormalBasis OrthonormalBasis::from_vectors(std::vector<Vec> vs, double tol) {
    if (vs.empty()) throw DimMismatch("OrthonormalBasis: no vectors");
    const int n = static_cast<int>(vs[0].size());
    for (const auto& v : vs)
        if (static_cast<int>(v.size()) != n)
            throw DimMismatch("OrthonormalBasis: inconsistent vector lengths");
    if (static_cast<int>(vs.size()) > n)
        throw DimMismatch("OrthonormalBasis: more vectors than ambient dimension");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i; j < vs.size(); ++j) {
            const double g = dot(vs[i], vs[j]);
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - want) > tol)
                throw std::invalid_argument("OrthonormalBasis: vectors are not orthonormal");
        }
    }
    OrthonormalBasis b;
    b.dim = n;
    b.vectors = std::move(vs);
    return b;
}

namespace detail {

SmallSvd svd_small(const std::vector<Vec>& g_rows) {
    const int d = static_cast<int>(g_rows.size());
    auto G = [&](int i, int j) { return g_rows[i][j]; };

    // G^T G is symmetric PSD; its eigenvectors are the right singular vectors
    // and sqrt of its eigenvalues the singular values.
    SymMatrix gtg(d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += G(k, i) * G(k, j);
            gtg.set(i, j, s);
        }
    }
    EigenSystem e = sym_eigen(gtg, 1e-12);

    SmallSvd out;
    out.s.resize(d);
    out.v_cols.resize(d);
    out.u_cols.assign(d, Vec(d, 0.0));
    double smax = 0.0;
    for (int k = 0; k < d; ++k) {
        out.s[k] = std::sqrt(std::max(0.0, e.values[k]));
        out.v_cols[k] = e.vectors[k];
        smax = std::max(smax, out.s[k]);
    }

    // Left vectors: u_k = G v_k / s_k where s_k is safely nonzero; the rest are
    // completed to an orthonormal set from the standard basis.
    const double cutoff = std::max(smax, 1.0) * 1e-12;
    std::vector<int> fill;
    for (int k = 0; k < d; ++k) {
        if (out.s[k] > cutoff) {
            Vec u(d, 0.0);
            for (int i = 0; i < d; ++i) {
                double s = 0.0;
                for (int j = 0; j < d; ++j) s += G(i, j) * out.v_cols[k][j];
                u[i] = s / out.s[k];
            }
            // re-orthogonalize against previously formed columns
            for (int p = 0; p < k; ++p) axpy(-dot(u, out.u_cols[p]), out.u_cols[p], u);
            const double nrm = norm2(u);
            if (nrm > 0.5) {
                scale_inplace(u, 1.0 / nrm);
                out.u_cols[k] = u;
                continue;
            }
        }
        fill.push_back(k);
    }
    std::vector<bool> formed(d, false);
    for (int k = 0; k < d; ++k) formed[k] = norm2(out.u_cols[k]) > 0.5;
    for (int k : fill) {
        // best standard axis after orthogonalization against the formed columns
        Vec best;
        double best_nrm = -1.0;
        for (int axis = 0; axis < d; ++axis) {
            Vec u(d, 0.0);
            u[axis] = 1.0;
            for (int p = 0; p < d; ++p)
                if (formed[p]) axpy(-dot(u, out.u_cols[p]), out.u_cols[p], u);
            const double nrm = norm2(u);
            if (nrm > best_nrm) {
                best_nrm = nrm;
                best = std::move(u);
            }
        }
        scale_inplace(best, 1.0 / best_nrm);
        out.u_cols[k] = std::move(best);
        formed[k] = true;
    }
    return out;
}

} // namespace detail

namespace {

std::vector<Vec> cross_gram(const OrthonormalBasis& u, const OrthonormalBasis& v) {
    if (u.dim != v.dim) throw DimMismatch("subspace ops: ambient dimensions differ");
    if (u.count() != v.count()) throw DimMismatch("subspace ops: subspace dimensions differ");
    const int d = u.count();
    std::vector<Vec> g(d, Vec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g[i][j] = dot(u.vectors[i], v.vectors[j]);
    return g;
}

} // namespace

PrincipalAngles principal_angles(const OrthonormalBasis& u, const OrthonormalBasis& v) {
    const auto g = cross_gram(u, v);
    const auto svd = detail::svd_small(g);
    PrincipalAngles pa;
    pa.angles.resize(svd.s.size());
    for (std::size_t i = 0; i < svd.s.size(); ++i) {
        const double c = std::clamp(svd.s[i], 0.0, 1.0);
        pa.angles[i] = std::acos(c); // s descending -> angles ascending
    }
    return pa;
}

OrthonormalBasis align_basis(const OrthonormalBasis& x, const OrthonormalBasis& y) {
    const auto g = cross_gram(x, y);
    const auto svd = detail::svd_small(g);
    const int d = x.count();
    const int n = x.dim;

    // R = U V^T (d x d orthogonal), xhat_j = sum_i x_i R_ij
    std::vector<Vec> r(d, Vec(d, 0.0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += svd.u_cols[k][i] * svd.v_cols[k][j];
            r[i][j] = s;
        }

    std::vector<Vec> xhat(d, Vec(n, 0.0));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) axpy(r[i][j], x.vectors[i], xhat[j]);

    OrthonormalBasis out;
    out.dim = n;
    out.vectors = std::move(xhat);
    return out;
}

std::vector<Vec> align_eigenvectors(const EigenSystem& source, const EigenSystem& target,
                                    double equality_tol) {
    const int n = source.count();
    if (target.count() != n) throw DimMismatch("align_eigenvectors: eigensystem sizes differ");
    std::vector<Vec> aligned(source.vectors);
    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < n && std::abs(source.values[end] - source.values[start]) <= equality_tol) ++end;
        if (end - start == 1) {
            if (dot(aligned[start], target.vectors[start]) < 0.0)
                for (double& v : aligned[start]) v = -v;
        } else {
            OrthonormalBasis xs, ys;
            xs.dim = ys.dim = static_cast<int>(aligned[start].size());
            for (int i = start; i < end; ++i) {
                xs.vectors.push_back(aligned[i]);
                ys.vectors.push_back(target.vectors[i]);
            }
            OrthonormalBasis rotated = align_basis(xs, ys);
            for (int i = start; i < end; ++i) aligned[i] = rotated.vectors[i - start];
        }
        start = end;
    }
    return aligned;
}

} // namespace mpt
