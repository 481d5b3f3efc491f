#pragma once

#include <string>
#include <vector>

#include "mpt/vec.hpp"

namespace mpt {

/// Dense real symmetric matrix. Symmetry is an invariant: construction
/// symmetrizes inputs that are off by at most 1e-12 entrywise and rejects
/// anything worse; mutation goes through set() which writes both triangles.
class SymMatrix {
  public:
    explicit SymMatrix(int n);

    /// Validates squareness, finiteness and symmetry (tolerance 1e-12; small
    /// asymmetry is averaged away as (X + X^T)/2).
    static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);
    static SymMatrix from_flat(int n, const std::vector<double>& flat);

    int size() const { return n_; }

    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    void set(int i, int j, double v) {
        a_[static_cast<std::size_t>(i) * n_ + j] = v;
        a_[static_cast<std::size_t>(j) * n_ + i] = v;
    }

    const double* row(int i) const { return a_.data() + static_cast<std::size_t>(i) * n_; }
    const std::vector<double>& flat() const { return a_; }

    Vec matvec(const Vec& x) const;
    Vec column(int j) const;

    double trace() const;
    double frobenius_norm() const;
    double off_diagonal_frobenius() const;
    double max_abs() const;

    /// Text format: line 1 holds n, then n lines of n whitespace-separated
    /// decimal literals (the full square matrix). Symmetry is validated on load.
    static SymMatrix load(const std::string& path);
    void save(const std::string& path) const;

    friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
    friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
    friend SymMatrix operator*(double c, const SymMatrix& a);

  private:
    int n_;
    std::vector<double> a_; // row-major n*n, kept exactly symmetric
};

/// Random symmetric matrix with entries uniform in [lo, hi); draws consumed in
/// row-major upper-triangle order (diagonal included).
SymMatrix random_symmetric_uniform(int n, std::uint64_t seed, double lo = -1.0, double hi = 1.0);

/// Random symmetric matrix with entries +-scale (Rademacher), same draw order.
SymMatrix random_symmetric_rademacher(int n, std::uint64_t seed, double scale = 1.0);

} // namespace mpt
