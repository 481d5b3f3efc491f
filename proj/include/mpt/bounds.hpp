#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpt/subspace.hpp"
#include "mpt/sym_matrix.hpp"

namespace mpt {

/// Result of evaluating one theorem: a value or interval plus the
/// precondition flag and the intermediate quantities that produced it.
/// Serializes to one CSV row: kind,t,lower,upper,preconditions_met,details
/// (details as `key=value` pairs joined by `;`). Bounds clamped at a trivial
/// cap carry vacuous=1 in the details.
struct BoundReport {
    std::string kind;
    int t = -1;
    std::optional<double> lower;
    std::optional<double> upper;
    bool preconditions_met = true;
    bool vacuous = false;
    std::vector<std::pair<std::string, double>> details;

    double value() const; // the single bound for one-sided reports (stored in upper)

    static std::string csv_header();
    std::string csv_row() const;
};

/// Eigenvalue multiplicities and gaps for a descending spectrum. Values within
/// equality_tol of lambda_s form its equality class Lambda_s; d_s is the class
/// size and delta_s the distance to the nearest value outside the class.
struct GapInfo {
    std::vector<double> values;
    double equality_tol = 0.0;
    std::vector<int> mult;        // d_s
    std::vector<double> gap;      // delta_s

    /// Delta_{s,t}: reciprocal of min{ d_i / delta_i : i in {s,t} }.
    double pair_delta(int s, int t) const;
    /// min{ sqrt(d_i) / delta_i : i in {s,t} }, the multiplicity-weighted ratio
    /// the cross-angle bound uses. Both variants are surfaced on purpose.
    double pair_sqrt_ratio(int s, int t) const;
};

GapInfo gap_info(const std::vector<double>& values, double equality_tol);
/// equality_tol = 1e-9 * max|lambda|
GapInfo gap_info(const std::vector<double>& values);

/// Parameters of the zeta tail theorems. n is kept as a real so the literal
/// formulas can be evaluated at symbolic sizes (e.g. n = e^4) as well as at
/// integer dimensions.
struct ZetaBoundParams {
    double gamma = 0.0;  // moment scale: E|H_ij/gamma|^p <= 1/n for p >= 2
    double xi = 1.1;     // > 1
    double kappa = 0.5;  // in (0,1)
    double lambda = 0.0; // reference eigenvalue, > ||H||
    double n = 0.0;      // dimension
    double h_norm = 0.0; // spectral norm of H
    double u_inf = 0.0;
    double u_two = 0.0;
};

// --- classical bounds ---

/// [lambda_t - ||H||, lambda_t + ||H||]
BoundReport weyl_interval(double lambda_t, double h_norm);

/// sin(theta_t) <= ||H|| / delta_t with delta_t = min_{j != t} |pert_values[j] - lambda_t|,
/// clamped to <= 1.
BoundReport dk_simple_sin(const std::vector<double>& perturbed_values, double lambda_t, int t,
                          double h_norm);

/// ||sin Theta(U, Utilde)||_F <= 2 sqrt(d) ||H|| / delta for the block r..s
/// (inclusive, 0-based) with delta = min(values[r-1]-values[r], values[s]-values[s+1]),
/// out-of-range neighbors at +-infinity. Clamped at sqrt(d).
BoundReport dk_subspace_sin(const std::vector<double>& values, int r, int s, double h_norm);

/// (h_pair, h_span): h_pair = max_{i,j} |<u_i, H u_j>|, h_span = d * h_pair.
std::pair<double, double> pairwise_h(const SymMatrix& h, const OrthonormalBasis& basis);

// --- eigenvalue interval bounds ---

/// Interval for the t-th perturbed eigenvalue, t <= T < n (0-based), given h
/// bounding |<x,Hx>| on the span of the top T+1 eigenvectors. Lower bound
/// lambda_t - h always holds; the upper needs values[t] - values[T+1] > 2||H|| - h
/// and is omitted (preconditions_met=false) otherwise.
BoundReport eigval_interval_top(const std::vector<double>& values, int T, int t, double h,
                                double h_norm);

/// Mirror bound at the bottom of the spectrum via the negation reduction:
/// upper lambda_t + h always holds; lower needs values[s_down-1] - values[t] >
/// 2||H|| - h (s_down >= 1, t >= s_down, 0-based).
BoundReport eigval_interval_bottom(const std::vector<double>& values, int s_down, int t, double h,
                                   double h_norm);

// --- random-perturbation envelopes ---

/// P(|<u,Hv>| >= gamma) <= 2 exp(-gamma^2 / (8 sigma^2)), capped at 1.
double hoeffding_tail(double gamma, double sigma);

/// ||H|| <= 2 sigma sqrt(n) + C sqrt(B sigma) n^{1/4} log n, hypothesis
/// sigma >= C' n^{-1/2} B log^2 n reported through preconditions_met (the
/// formula value is reported either way).
BoundReport spectral_norm_envelope(double sigma, double B, int n, double C, double C_prime);

// --- angle and entrywise bounds ---

/// (sin_t, cos_s) after aligning bases per eigenspace:
/// sin_t <= 2 sqrt(2 d_t) ||H|| / delta_t, |cos theta_s| <= 2 sqrt(2) ||H|| *
/// min{sqrt(d_i)/delta_i : i in {s,t}}; both clamped at 1.
std::pair<double, double> dk_angle_bounds(const GapInfo& info, double h_norm, int t, int s);

/// Entrywise eigenvector bound with Weyl/Davis-Kahan inputs. vectors[s] and
/// zeta[s] may be empty for indices with values[s] == 0 (their terms vanish).
/// zeta[s] is the zeta vector of u^(s) computed at lambda = values[t].
double entrywise_bound_dk(const std::vector<double>& values, const GapInfo& info, double h_norm,
                          int t, const std::vector<Vec>& vectors, const std::vector<Vec>& zeta,
                          int alpha);

/// The general form: eps is the absolute eigenvalue perturbation
/// |lambda_t - pert_lambda_t|, sin_t and cos_s the (bounds on) angles between
/// the perturbed t-th eigenvector and the eigenvectors of the base matrix.
/// cos_s[t] is ignored.
double entrywise_bound_general(const std::vector<double>& values, double eps, double sin_t,
                               const std::vector<double>& cos_s, int t,
                               const std::vector<Vec>& vectors, const std::vector<Vec>& zeta,
                               int alpha);

// --- zeta tail bounds ---

/// (bound, fail_prob):
/// bound = gamma L/(lambda - gamma L) ||u||_inf + r^m/(1-r) ||u||_2 with
/// L = (log n)^xi, r = ||H||/lambda, m = floor(kappa/8 L + 1); fail_prob =
/// n^{-1/4 (log_b n)^{xi-1} (log_b e)^{-xi} + 1}, b = 2/(kappa+1), capped at 1.
std::pair<double, double> zeta_tail_bound(const ZetaBoundParams& p);

/// First term scaled by beta_alpha = 1 if alpha in F else sqrt(|F|/n).
std::pair<double, double> zeta_tail_bound_mag(const ZetaBoundParams& p, double f_size,
                                              bool alpha_in_f);

/// Block-vector version: sum_k |c_k| (beta_{alpha,k} first-term + sqrt(|F_k|)
/// second-term); fail_prob multiplied by K.
std::pair<double, double> zeta_tail_bound_block(const ZetaBoundParams& p,
                                                const std::vector<double>& block_sizes,
                                                const std::vector<double>& block_values,
                                                int alpha_block);

/// Splits a power series at K: beta eta Q/(1 - eta Q) + ||u||_2 (eta X)^{K+1}/(1 - eta X)
/// bounds sum_{k>=1} |[(eta X)^k u]_alpha| whenever |(X^k u)_alpha| <= beta Q^k
/// for k <= K. Requires eta < min(1/Q, 1/||X||).
double series_split_bound(double beta, double Q, double eta, double x_norm, int K, double u_two);

} // namespace mpt
