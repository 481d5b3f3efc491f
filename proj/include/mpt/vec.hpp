#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "mpt/errors.hpp"

namespace mpt {

using Vec = std::vector<double>;

inline double dot(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DimMismatch("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline double norm2(const Vec& x) { return std::sqrt(dot(x, x)); }

inline double norm_inf(const Vec& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

/// y += a*x
inline void axpy(double a, const Vec& x, Vec& y) {
    if (x.size() != y.size()) throw DimMismatch("axpy: size mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline void scale_inplace(Vec& x, double a) {
    for (double& v : x) v *= a;
}

} // namespace mpt
