#pragma once

#include <cstdint>
#include <utility>

#include "mpt/eigen.hpp"
#include "mpt/sym_matrix.hpp"

namespace mpt {

/// Truncated series sum_{p=1..p_max} (H/lambda)^p u together with the
/// accumulated per-entry absolute contributions (the empirical zeta vector)
/// and the geometric bound on the dropped tail. per_entry_abs sums |.| term by
/// term, so it upper-bounds |partial| entrywise; the tail bounds derived for
/// it therefore also cover the plain truncated sum.
struct SeriesResult {
    Vec partial;
    Vec per_entry_abs; // zeta: sum_p |(H/lambda)^p u|_alpha
    int p_max = 0;
    double tail_bound = 0.0; // ||u||_2 r^{p_max+1} / (1-r), r = ||H||/|lambda|
};

/// Smallest P >= 1 whose geometric tail ||u||_2 r^{P+1}/(1-r) is at most
/// tail_tol; throws NoConvergence past the cap rather than truncating silently.
int choose_p_max(double h_norm, double lambda, double u_two, double tail_tol = 1e-10,
                 int cap = 200);

SeriesResult neumann_series_apply(const SymMatrix& h, double lambda, const Vec& u, int p_max);
/// Overload taking a precomputed spectral norm of h (skips the eigensolve).
SeriesResult neumann_series_apply(const SymMatrix& h, double lambda, const Vec& u, int p_max,
                                  double h_norm);

/// Reconstructs the perturbed eigenvector t through the eigenbasis of the base
/// matrix: sum_s (lambda_s / pert_lambda_t) <v_t, u_s> sum_{p<=p_max} (H/pert_lambda_t)^p u_s.
/// Returns the truncated right-hand side and its 2-norm distance to v_t.
std::pair<Vec, double> neumann_reconstruct(const EigenSystem& e_base, const SymMatrix& h, int t,
                                           const EigenSystem& e_pert, int p_max);
std::pair<Vec, double> neumann_reconstruct(const EigenSystem& e_base, const SymMatrix& h, int t,
                                           const EigenSystem& e_pert, int p_max, double h_norm);

/// Monte Carlo for the power-interaction tail: X has +-1/sqrt(n) Rademacher
/// entries (so both moment hypotheses hold), u has unit inf-norm. Counts the
/// trials where max_alpha |(X^k u)_alpha| >= (log n)^{k xi} and returns that
/// frequency next to the theorem's probability (kappa fixed at 1/2). k is
/// capped at (kappa/8)(log n)^xi.
std::pair<double, double> interaction_mc(int n, int k, double xi, const Vec& u, int trials,
                                         std::uint64_t seed);

} // namespace mpt
