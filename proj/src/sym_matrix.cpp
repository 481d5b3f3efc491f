#include "mpt/sym_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mpt/errors.hpp"
#include "mpt/rng.hpp"

namespace mpt {

namespace {
constexpr double kSymmetryTol = 1e-12;
}

SymMatrix::SymMatrix(int n) : n_(n) {
    if (n <= 0) throw DimMismatch("SymMatrix: dimension must be positive");
    a_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n == 0) throw DimMismatch("SymMatrix: empty input");
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n) throw DimMismatch("SymMatrix: input is not square");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return from_flat(n, flat);
}

SymMatrix SymMatrix::from_flat(int n, const std::vector<double>& flat) {
    if (n <= 0) throw DimMismatch("SymMatrix: dimension must be positive");
    if (flat.size() != static_cast<std::size_t>(n) * n)
        throw DimMismatch("SymMatrix: flat size does not match n*n");
    SymMatrix m(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double xij = flat[static_cast<std::size_t>(i) * n + j];
            if (!std::isfinite(xij)) throw NotSymmetric("SymMatrix: non-finite entry");
            const double xji = flat[static_cast<std::size_t>(j) * n + i];
            if (std::abs(xij - xji) > kSymmetryTol)
                throw NotSymmetric("SymMatrix: asymmetry exceeds 1e-12");
            m.a_[static_cast<std::size_t>(i) * n + j] = 0.5 * (xij + xji);
        }
    }
    return m;
}

Vec SymMatrix::matvec(const Vec& x) const {
    if (static_cast<int>(x.size()) != n_) throw DimMismatch("matvec: size mismatch");
    Vec y(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        const double* r = row(i);
        double s = 0.0;
        for (int j = 0; j < n_; ++j) s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

Vec SymMatrix::column(int j) const {
    if (j < 0 || j >= n_) throw IndexOutOfRange("column: index out of range");
    Vec c(n_);
    for (int i = 0; i < n_; ++i) c[i] = (*this)(i, j);
    return c;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double SymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double SymMatrix::off_diagonal_frobenius() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) s += (*this)(i, j) * (*this)(i, j);
    return std::sqrt(2.0 * s);
}

double SymMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

SymMatrix SymMatrix::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
    int n = 0;
    if (!(in >> n) || n <= 0) throw std::invalid_argument("bad matrix header in " + path);
    std::vector<double> flat(static_cast<std::size_t>(n) * n);
    for (auto& v : flat)
        if (!(in >> v)) throw std::invalid_argument("truncated matrix file: " + path);
    return from_flat(n, flat);
}

void SymMatrix::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write matrix file: " + path);
    out << n_ << "\n";
    char buf[32];
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", (*this)(i, j));
            out << buf << (j + 1 == n_ ? "" : " ");
        }
        out << "\n";
    }
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
    if (a.n_ != b.n_) throw DimMismatch("operator+: size mismatch");
    SymMatrix c(a.n_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
    return c;
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
    if (a.n_ != b.n_) throw DimMismatch("operator-: size mismatch");
    SymMatrix c(a.n_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
    return c;
}

SymMatrix operator*(double c, const SymMatrix& a) {
    SymMatrix r(a.n_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = c * a.a_[i];
    return r;
}

SymMatrix random_symmetric_uniform(int n, std::uint64_t seed, double lo, double hi) {
    SymMatrix m(n);
    SplitMix64 g(seed);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set(i, j, g.next_double(lo, hi));
    return m;
}

SymMatrix random_symmetric_rademacher(int n, std::uint64_t seed, double scale) {
    SymMatrix m(n);
    SplitMix64 g(seed);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set(i, j, scale * g.next_sign());
    return m;
}

} // namespace mpt
