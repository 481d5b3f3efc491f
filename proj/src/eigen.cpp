#include "mpt/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mpt/errors.hpp"

namespace mpt {

namespace {
constexpr int kMaxSweeps = 100;
} // namespace

void canonicalize_sign(Vec& v) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        const double a = std::abs(v[i]);
        if (a > best) { // strict: ties keep the lowest index
            best = a;
            arg = i;
        }
    }
    if (v[arg] < 0.0)
        for (double& x : v) x = -x;
}

EigenSystem sym_eigen(const SymMatrix& m, double tol) {
    if (!(tol > 0.0) || tol > 1e-4) throw std::invalid_argument("sym_eigen: tol must be in (0, 1e-4]");
    const int n = m.size();
    std::vector<double> a(m.flat());
    // eigenvector candidates as rows (contiguous under rotations)
    std::vector<double> vt(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) vt[static_cast<std::size_t>(i) * n + i] = 1.0;

    auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

    // ||M||_F / sqrt(n) never exceeds the spectral norm, so stopping at
    // tol * that keeps eigenpair residuals within tol * ||M||_2
    const double threshold = tol * m.frobenius_norm() / std::sqrt(static_cast<double>(n));
    // skipped rotations this small keep the final off-norm within threshold
    const double skip = threshold / (2.0 * n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += A(i, j) * A(i, j);
        return std::sqrt(2.0 * s);
    };

    bool converged = (n == 1) || off_norm() <= threshold;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (std::abs(apq) <= skip) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const double app = A(p, p), aqq = A(q, q);
                double* rp = a.data() + static_cast<std::size_t>(p) * n;
                double* rq = a.data() + static_cast<std::size_t>(q) * n;
                // rows first (the matrix is symmetric, so rows hold the column
                // data too), then mirror the two columns
                for (int i = 0; i < n; ++i) {
                    const double aip = rp[i], aiq = rq[i];
                    rp[i] = c * aip - s * aiq;
                    rq[i] = s * aip + c * aiq;
                }
                A(p, p) = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                A(q, q) = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    a[static_cast<std::size_t>(i) * n + p] = rp[i];
                    a[static_cast<std::size_t>(i) * n + q] = rq[i];
                }

                double* vp = vt.data() + static_cast<std::size_t>(p) * n;
                double* vq = vt.data() + static_cast<std::size_t>(q) * n;
                for (int i = 0; i < n; ++i) {
                    const double vip = vp[i], viq = vq[i];
                    vp[i] = c * vip - s * viq;
                    vq[i] = s * vip + c * viq;
                }
            }
        }
        converged = off_norm() <= threshold;
    }
    if (!converged) throw NoConvergence("sym_eigen: Jacobi did not converge within 100 sweeps");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return A(i, i) > A(j, j); });

    EigenSystem e;
    e.values.resize(n);
    e.vectors.assign(n, Vec(n));
    for (int k = 0; k < n; ++k) {
        const int src = order[k];
        e.values[k] = A(src, src);
        const double* row = vt.data() + static_cast<std::size_t>(src) * n;
        e.vectors[k].assign(row, row + n);
        canonicalize_sign(e.vectors[k]);
    }
    return e;
}

double spectral_norm(const SymMatrix& m) {
    if (m.max_abs() == 0.0) return 0.0;
    const EigenSystem e = sym_eigen(m);
    return std::max(std::abs(e.values.front()), std::abs(e.values.back()));
}

std::vector<int> top_k_by_magnitude(const std::vector<double>& values, int k) {
    const int n = static_cast<int>(values.size());
    if (k < 1 || k > n) throw IndexOutOfRange("top_k_by_magnitude: k out of range");
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return std::abs(values[i]) > std::abs(values[j]);
    });
    order.resize(k);
    return order;
}

SymMatrix rank_k_reconstruct(const EigenSystem& e, int k) {
    const int n = e.count();
    if (n == 0 || static_cast<int>(e.vectors.size()) != n)
        throw DimMismatch("rank_k_reconstruct: malformed eigensystem");
    const std::vector<int> pick = top_k_by_magnitude(e.values, k);
    const int dim = static_cast<int>(e.vectors[0].size());
    SymMatrix r(dim);
    for (int idx : pick) {
        const Vec& u = e.vectors[idx];
        const double lam = e.values[idx];
        for (int i = 0; i < dim; ++i) {
            const double li = lam * u[i];
            for (int j = i; j < dim; ++j) r.set(i, j, r(i, j) + li * u[j]);
        }
    }
    return r;
}

double quad_form(const Vec& x, const SymMatrix& h, const Vec& y) {
    if (static_cast<int>(x.size()) != h.size() || static_cast<int>(y.size()) != h.size())
        throw DimMismatch("quad_form: size mismatch");
    return dot(x, h.matvec(y));
}

} // namespace mpt
