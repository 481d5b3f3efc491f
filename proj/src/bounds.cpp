#include "mpt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "mpt/errors.hpp"

namespace mpt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void check_sorted_descending(const std::vector<double>& values) {
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[i - 1])
            throw std::invalid_argument("values must be sorted descending");
}

} // namespace

double BoundReport::value() const {
    if (!upper) throw std::logic_error("BoundReport::value: no value present");
    return *upper;
}

std::string BoundReport::csv_header() { return "kind,t,lower,upper,preconditions_met,details"; }

std::string BoundReport::csv_row() const {
    std::ostringstream os;
    os << kind << ',' << t << ',';
    if (lower) os << g17(*lower);
    os << ',';
    if (upper) os << g17(*upper);
    os << ',' << (preconditions_met ? 1 : 0) << ',';
    bool first = true;
    for (const auto& [k, v] : details) {
        if (!first) os << ';';
        os << k << '=' << g17(v);
        first = false;
    }
    if (vacuous) {
        if (!first) os << ';';
        os << "vacuous=1";
    }
    return os.str();
}

GapInfo gap_info(const std::vector<double>& values, double equality_tol) {
    const int n = static_cast<int>(values.size());
    if (n == 0) throw DimMismatch("gap_info: empty spectrum");
    if (equality_tol < 0.0) throw std::invalid_argument("gap_info: negative tolerance");
    check_sorted_descending(values);

    GapInfo info;
    info.values = values;
    info.equality_tol = equality_tol;
    info.mult.resize(n);
    info.gap.resize(n);
    for (int s = 0; s < n; ++s) {
        int d = 0;
        double delta = kInf;
        for (int i = 0; i < n; ++i) {
            const double diff = std::abs(values[i] - values[s]);
            if (diff <= equality_tol)
                ++d;
            else
                delta = std::min(delta, diff);
        }
        if (d == n) throw AllEqual("gap_info: a single eigenvalue cluster spans the spectrum");
        info.mult[s] = d;
        info.gap[s] = delta;
    }
    return info;
}

GapInfo gap_info(const std::vector<double>& values) {
    double mx = 0.0;
    for (double v : values) mx = std::max(mx, std::abs(v));
    return gap_info(values, 1e-9 * mx);
}

double GapInfo::pair_delta(int s, int t) const {
    const double inv = std::min(mult[s] / gap[s], mult[t] / gap[t]);
    return 1.0 / inv;
}

double GapInfo::pair_sqrt_ratio(int s, int t) const {
    return std::min(std::sqrt(static_cast<double>(mult[s])) / gap[s],
                    std::sqrt(static_cast<double>(mult[t])) / gap[t]);
}

BoundReport weyl_interval(double lambda_t, double h_norm) {
    if (h_norm < 0.0) throw std::invalid_argument("weyl_interval: negative spectral norm");
    BoundReport r;
    r.kind = "weyl";
    r.lower = lambda_t - h_norm;
    r.upper = lambda_t + h_norm;
    r.details = {{"H_norm", h_norm}};
    return r;
}

BoundReport dk_simple_sin(const std::vector<double>& perturbed_values, double lambda_t, int t,
                          double h_norm) {
    const int n = static_cast<int>(perturbed_values.size());
    if (n < 2) throw DimMismatch("dk_simple_sin: need at least two eigenvalues");
    if (t < 0 || t >= n) throw IndexOutOfRange("dk_simple_sin: t out of range");
    double delta = kInf;
    for (int j = 0; j < n; ++j)
        if (j != t) delta = std::min(delta, std::abs(perturbed_values[j] - lambda_t));
    if (delta == 0.0) throw ZeroGap("dk_simple_sin: zero eigengap");

    BoundReport r;
    r.kind = "dk_simple_sin";
    r.t = t;
    const double raw = h_norm / delta;
    r.upper = std::min(1.0, raw);
    r.vacuous = raw > 1.0;
    r.details = {{"delta_t", delta}, {"H_norm", h_norm}};
    return r;
}

BoundReport dk_subspace_sin(const std::vector<double>& values, int r, int s, double h_norm) {
    const int n = static_cast<int>(values.size());
    if (r < 0 || s < r || s >= n) throw IndexOutOfRange("dk_subspace_sin: bad index pair");
    check_sorted_descending(values);
    const double above = (r == 0) ? kInf : values[r - 1] - values[r];
    const double below = (s == n - 1) ? kInf : values[s] - values[s + 1];
    const double delta = std::min(above, below);
    if (!(delta > 0.0)) throw NonPositiveGap("dk_subspace_sin: non-positive gap");

    const int d = s - r + 1;
    const double raw = (delta == kInf) ? 0.0 : 2.0 * std::sqrt(static_cast<double>(d)) * h_norm / delta;
    const double cap = std::sqrt(static_cast<double>(d));
    BoundReport rep;
    rep.kind = "dk_subspace_sin";
    rep.t = r;
    rep.upper = std::min(cap, raw);
    rep.vacuous = raw > cap;
    rep.details = {{"delta", delta}, {"d", static_cast<double>(d)}, {"H_norm", h_norm}};
    return rep;
}

std::pair<double, double> pairwise_h(const SymMatrix& h, const OrthonormalBasis& basis) {
    if (basis.dim != h.size()) throw DimMismatch("pairwise_h: dimension mismatch");
    const int d = basis.count();
    double h_pair = 0.0;
    for (int i = 0; i < d; ++i) {
        const Vec hu = h.matvec(basis.vectors[i]);
        for (int j = i; j < d; ++j) h_pair = std::max(h_pair, std::abs(dot(basis.vectors[j], hu)));
    }
    return {h_pair, d * h_pair};
}

BoundReport eigval_interval_top(const std::vector<double>& values, int T, int t, double h,
                                double h_norm) {
    const int n = static_cast<int>(values.size());
    if (T < 0 || T >= n - 1) throw IndexOutOfRange("eigval_interval_top: T must satisfy T < n-1");
    if (t < 0 || t > T) throw IndexOutOfRange("eigval_interval_top: need 0 <= t <= T");
    if (h < 0.0 || h_norm < 0.0) throw std::invalid_argument("eigval_interval_top: negative norm");
    check_sorted_descending(values);

    const double gap = values[t] - values[T + 1];
    BoundReport r;
    r.kind = "eigval_interval_top";
    r.t = t;
    r.lower = values[t] - h;
    r.preconditions_met = gap > 2.0 * h_norm - h;
    if (r.preconditions_met) r.upper = values[t] + h + h_norm * h_norm / (gap + h - h_norm);
    r.details = {{"h", h}, {"H_norm", h_norm}, {"gap", gap}, {"T", static_cast<double>(T)}};
    return r;
}

BoundReport eigval_interval_bottom(const std::vector<double>& values, int s_down, int t, double h,
                                   double h_norm) {
    const int n = static_cast<int>(values.size());
    if (s_down < 1 || s_down >= n) throw IndexOutOfRange("eigval_interval_bottom: need 1 <= s_down < n");
    if (t < s_down || t >= n) throw IndexOutOfRange("eigval_interval_bottom: need s_down <= t < n");
    if (h < 0.0 || h_norm < 0.0) throw std::invalid_argument("eigval_interval_bottom: negative norm");
    check_sorted_descending(values);

    const double gap = values[s_down - 1] - values[t];
    BoundReport r;
    r.kind = "eigval_interval_bottom";
    r.t = t;
    r.upper = values[t] + h;
    r.preconditions_met = gap > 2.0 * h_norm - h;
    if (r.preconditions_met) r.lower = values[t] - h - h_norm * h_norm / (gap + h - h_norm);
    r.details = {{"h", h}, {"H_norm", h_norm}, {"gap", gap}, {"s_down", static_cast<double>(s_down)}};
    return r;
}

double hoeffding_tail(double gamma, double sigma) {
    if (!(gamma > 0.0) || !(sigma > 0.0))
        throw std::invalid_argument("hoeffding_tail: gamma and sigma must be positive");
    return std::min(1.0, 2.0 * std::exp(-gamma * gamma / (8.0 * sigma * sigma)));
}

BoundReport spectral_norm_envelope(double sigma, double B, int n, double C, double C_prime) {
    if (!(sigma > 0.0) || !(B > 0.0))
        throw std::invalid_argument("spectral_norm_envelope: sigma and B must be positive");
    const double ln = std::log(static_cast<double>(n));
    BoundReport r;
    r.kind = "spectral_norm_envelope";
    r.upper = 2.0 * sigma * std::sqrt(static_cast<double>(n)) +
              C * std::sqrt(B * sigma) * std::pow(static_cast<double>(n), 0.25) * ln;
    r.preconditions_met = sigma >= C_prime * B * ln * ln / std::sqrt(static_cast<double>(n));
    r.details = {{"sigma", sigma}, {"B", B}, {"C", C}, {"C_prime", C_prime}};
    return r;
}

std::pair<double, double> dk_angle_bounds(const GapInfo& info, double h_norm, int t, int s) {
    const int n = static_cast<int>(info.values.size());
    if (t < 0 || t >= n || s < 0 || s >= n) throw IndexOutOfRange("dk_angle_bounds: index out of range");
    if (!(info.gap[t] > 0.0) || !(info.gap[s] > 0.0))
        throw ZeroGap("dk_angle_bounds: non-positive gap");
    const double sin_t =
        std::min(1.0, 2.0 * std::sqrt(2.0 * info.mult[t]) * h_norm / info.gap[t]);
    const double cos_s = std::min(1.0, 2.0 * std::sqrt(2.0) * h_norm * info.pair_sqrt_ratio(s, t));
    return {sin_t, cos_s};
}

double entrywise_bound_dk(const std::vector<double>& values, const GapInfo& info, double h_norm,
                          int t, const std::vector<Vec>& vectors, const std::vector<Vec>& zeta,
                          int alpha) {
    const int n = static_cast<int>(values.size());
    if (t < 0 || t >= n) throw IndexOutOfRange("entrywise_bound_dk: t out of range");
    const double lam_star = std::abs(values[t]) - h_norm;
    if (!(lam_star > 0.0)) throw SpectralDominance("entrywise_bound_dk: |lambda_t| <= ||H||");
    if (!(info.gap[t] > 0.0)) throw ZeroGap("entrywise_bound_dk: zero gap at t");

    const double ratio = std::abs(values[t]) / lam_star;
    const double ua = std::abs(vectors[t].at(alpha));
    const double hd = h_norm / info.gap[t];
    double bound = ua * (8.0 * info.mult[t] * hd * hd + h_norm / lam_star) +
                   ratio * ratio * zeta[t].at(alpha);

    double interaction = 0.0;
    for (int s = 0; s < n; ++s) {
        if (s == t || values[s] == 0.0) continue;
        const double us = std::abs(vectors[s].at(alpha));
        const double zs = zeta[s].at(alpha);
        interaction += std::abs(values[s]) / info.pair_delta(s, t) * (us + ratio * zs);
    }
    bound += 2.0 * std::sqrt(2.0) * h_norm / lam_star * interaction;
    return bound;
}

double entrywise_bound_general(const std::vector<double>& values, double eps, double sin_t,
                               const std::vector<double>& cos_s, int t,
                               const std::vector<Vec>& vectors, const std::vector<Vec>& zeta,
                               int alpha) {
    const int n = static_cast<int>(values.size());
    if (t < 0 || t >= n) throw IndexOutOfRange("entrywise_bound_general: t out of range");
    if (eps < 0.0) throw std::invalid_argument("entrywise_bound_general: negative eps");
    const double denom = std::abs(values[t]) - eps;
    if (!(denom > 0.0)) throw SpectralDominance("entrywise_bound_general: |lambda_t| <= eps");

    const double ratio = std::abs(values[t]) / denom;
    const double ua = std::abs(vectors[t].at(alpha));
    double bound = ua * (sin_t * sin_t + eps / denom) + ratio * ratio * zeta[t].at(alpha);
    for (int s = 0; s < n; ++s) {
        if (s == t || values[s] == 0.0) continue;
        const double us = std::abs(vectors[s].at(alpha));
        const double zs = zeta[s].at(alpha);
        bound += std::abs(values[s]) * std::abs(cos_s[s]) / denom * (us + ratio * zs);
    }
    return bound;
}

namespace {

struct ZetaPieces {
    double first_coeff; // gamma L / (lambda - gamma L)
    double second_coeff; // r^m / (1 - r)
    double fail_prob;
};

ZetaPieces zeta_pieces(const ZetaBoundParams& p) {
    if (!(p.xi > 1.0)) throw PreconditionViolated("zeta bound: requires xi > 1");
    if (!(p.kappa > 0.0) || !(p.kappa < 1.0))
        throw PreconditionViolated("zeta bound: requires kappa in (0,1)");
    if (!(p.lambda > p.h_norm)) throw PreconditionViolated("zeta bound: requires lambda > ||H||");
    if (p.h_norm < 0.0) throw std::invalid_argument("zeta bound: negative ||H||");
    if (!(p.n >= 1.0)) throw std::invalid_argument("zeta bound: n must be >= 1");

    const double ln_n = std::log(p.n);
    const double L = std::pow(ln_n, p.xi);
    if (!(p.gamma * L < p.lambda))
        throw PreconditionViolated("zeta bound: requires gamma (log n)^xi < lambda");

    const double r = p.h_norm / p.lambda;
    const double m = std::floor(p.kappa / 8.0 * L + 1.0);
    ZetaPieces z;
    z.first_coeff = p.gamma * L / (p.lambda - p.gamma * L);
    z.second_coeff = (r == 0.0) ? 0.0 : std::pow(r, m) / (1.0 - r);

    // failure probability, evaluated literally: the "+1" exponent makes it
    // vacuous (capped at 1) until n is astronomically large
    const double ln_b = std::log(2.0 / (p.kappa + 1.0));
    const double log_b_n = ln_n / ln_b;
    const double log_b_e = 1.0 / ln_b;
    const double exponent =
        -0.25 * std::pow(log_b_n, p.xi - 1.0) * std::pow(log_b_e, -p.xi) + 1.0;
    z.fail_prob = std::min(1.0, std::exp(exponent * ln_n));
    return z;
}

} // namespace

std::pair<double, double> zeta_tail_bound(const ZetaBoundParams& p) {
    const ZetaPieces z = zeta_pieces(p);
    return {z.first_coeff * p.u_inf + z.second_coeff * p.u_two, z.fail_prob};
}

std::pair<double, double> zeta_tail_bound_mag(const ZetaBoundParams& p, double f_size,
                                              bool alpha_in_f) {
    if (f_size < 0.0 || f_size > p.n)
        throw std::invalid_argument("zeta_tail_bound_mag: |F| must lie in [0, n]");
    const ZetaPieces z = zeta_pieces(p);
    const double beta = alpha_in_f ? 1.0 : std::sqrt(f_size / p.n);
    return {beta * z.first_coeff * p.u_inf + z.second_coeff * p.u_two, z.fail_prob};
}

std::pair<double, double> zeta_tail_bound_block(const ZetaBoundParams& p,
                                                const std::vector<double>& block_sizes,
                                                const std::vector<double>& block_values,
                                                int alpha_block) {
    const int K = static_cast<int>(block_sizes.size());
    if (static_cast<int>(block_values.size()) != K)
        throw BlockSizeMismatch("zeta_tail_bound_block: sizes/values length mismatch");
    if (alpha_block < 0 || alpha_block >= K)
        throw IndexOutOfRange("zeta_tail_bound_block: alpha_block out of range");
    double total = 0.0;
    for (double b : block_sizes) {
        if (b < 0.0) throw BlockSizeMismatch("zeta_tail_bound_block: negative block size");
        total += b;
    }
    if (total != p.n) throw BlockSizeMismatch("zeta_tail_bound_block: block sizes must sum to n");

    const ZetaPieces z = zeta_pieces(p);
    double bound = 0.0;
    for (int k = 0; k < K; ++k) {
        const double beta = (k == alpha_block) ? 1.0 : std::sqrt(block_sizes[k] / p.n);
        bound += std::abs(block_values[k]) *
                 (beta * z.first_coeff + std::sqrt(block_sizes[k]) * z.second_coeff);
    }
    return {bound, std::min(1.0, K * z.fail_prob)};
}

double series_split_bound(double beta, double Q, double eta, double x_norm, int K, double u_two) {
    if (beta < 0.0 || Q < 0.0 || x_norm < 0.0 || u_two < 0.0 || K < 0)
        throw std::invalid_argument("series_split_bound: negative input");
    if (!(eta > 0.0)) throw std::invalid_argument("series_split_bound: eta must be positive");
    const double cap_q = (Q == 0.0) ? kInf : 1.0 / Q;
    const double cap_x = (x_norm == 0.0) ? kInf : 1.0 / x_norm;
    if (!(eta < std::min(cap_q, cap_x)))
        throw DivergentSeries("series_split_bound: eta >= min(1/Q, 1/||X||)");
    const double head = (Q == 0.0) ? 0.0 : beta * eta * Q / (1.0 - eta * Q);
    const double ex = eta * x_norm;
    const double tail = (ex == 0.0) ? 0.0 : u_two * std::pow(ex, K + 1) / (1.0 - ex);
    return head + tail;
}

} // namespace mpt
