#pragma once

// Test-only oracles, independent of the library's eigensolver path: a
// characteristic-polynomial eigensolver (Faddeev-LeVerrier coefficients +
// bisection on sign changes) and 2x2 closed forms. Only suitable for small
// matrices with reasonably separated spectra, which is all the tests need.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mpt/sym_matrix.hpp"

namespace oracle {

// det(lambda I - A) coefficients c s.t. p(x) = x^n + c[0] x^{n-1} + ... + c[n-1]
inline std::vector<double> charpoly_coeffs(const mpt::SymMatrix& a) {
    const int n = a.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    std::vector<double> c(n, 0.0);
    // M_1 = A, c_1 = -tr(M_1); M_k = A (M_{k-1} + c_{k-1} I), c_k = -tr(M_k)/k
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = a(i, j);
    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += m[i][i];
    c[0] = -tr;
    for (int k = 2; k <= n; ++k) {
        std::vector<std::vector<double>> prev = m;
        for (int i = 0; i < n; ++i) prev[i][i] += c[k - 2];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int l = 0; l < n; ++l) s += a(i, l) * prev[l][j];
                m[i][j] = s;
            }
        tr = 0.0;
        for (int i = 0; i < n; ++i) tr += m[i][i];
        c[k - 1] = -tr / k;
    }
    return c;
}

inline double charpoly_eval(const std::vector<double>& c, double x) {
    double p = 1.0;
    for (double ck : c) p = p * x + ck;
    return p;
}

// All real roots by grid bracketing + bisection; assumes simple roots
// separated by more than the grid pitch.
inline std::vector<double> eigenvalues_charpoly(const mpt::SymMatrix& a) {
    const int n = a.size();
    const auto c = charpoly_coeffs(a);
    double radius = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += std::abs(a(i, j));
        radius = std::max(radius, row);
    }
    radius += 1.0;

    const int grid = 200000;
    std::vector<double> roots;
    double x0 = -radius;
    double p0 = charpoly_eval(c, x0);
    for (int g = 1; g <= grid; ++g) {
        const double x1 = -radius + 2.0 * radius * g / grid;
        const double p1 = charpoly_eval(c, x1);
        if (p0 == 0.0) roots.push_back(x0);
        if (p0 * p1 < 0.0) {
            double lo = x0, hi = x1, plo = p0;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double pm = charpoly_eval(c, mid);
                if (plo * pm <= 0.0)
                    hi = mid;
                else {
                    lo = mid;
                    plo = pm;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        p0 = p1;
    }
    if (static_cast<int>(roots.size()) != n)
        throw std::runtime_error("charpoly oracle: failed to isolate all roots");
    std::sort(roots.begin(), roots.end(), std::greater<double>());
    return roots;
}

struct TwoByTwo {
    double lambda1, lambda2; // descending
    double top_angle;        // angle of the top eigenvector against e1
};

// closed form for [[a, b], [b, d]]
inline TwoByTwo eig_2x2(double a, double b, double d) {
    const double mean = 0.5 * (a + d);
    const double disc = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
    TwoByTwo r{mean + disc, mean - disc, 0.0};
    if (b == 0.0) {
        r.top_angle = (a >= d) ? 0.0 : M_PI / 2.0;
    } else {
        r.top_angle = std::atan2(r.lambda1 - a, b);
    }
    return r;
}

} // namespace oracle
