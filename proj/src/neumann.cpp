#include "mpt/neumann.hpp"

#include <cmath>

#include "mpt/errors.hpp"
#include "mpt/rng.hpp"

namespace mpt {

int choose_p_max(double h_norm, double lambda, double u_two, double tail_tol, int cap) {
    if (!(std::abs(lambda) > h_norm))
        throw SpectralDominance("choose_p_max: requires ||H|| < |lambda|");
    const double r = h_norm / std::abs(lambda);
    if (u_two == 0.0 || r == 0.0) return 1;
    for (int p = 1; p <= cap; ++p) {
        if (u_two * std::pow(r, p + 1) / (1.0 - r) <= tail_tol) return p;
    }
    throw NoConvergence("choose_p_max: geometric tail does not reach tolerance within cap");
}

SeriesResult neumann_series_apply(const SymMatrix& h, double lambda, const Vec& u, int p_max,
                                  double h_norm) {
    if (static_cast<int>(u.size()) != h.size()) throw DimMismatch("neumann_series_apply: size mismatch");
    if (p_max < 1) throw std::invalid_argument("neumann_series_apply: p_max must be >= 1");
    if (!(std::abs(lambda) > h_norm))
        throw SpectralDominance("neumann_series_apply: requires ||H|| < |lambda|");

    const int n = h.size();
    SeriesResult res;
    res.partial.assign(n, 0.0);
    res.per_entry_abs.assign(n, 0.0);
    res.p_max = p_max;

    Vec w = u;
    for (int p = 1; p <= p_max; ++p) {
        w = h.matvec(w);
        scale_inplace(w, 1.0 / lambda);
        for (int i = 0; i < n; ++i) {
            res.partial[i] += w[i];
            res.per_entry_abs[i] += std::abs(w[i]);
        }
    }
    const double r = h_norm / std::abs(lambda);
    res.tail_bound = norm2(u) * std::pow(r, p_max + 1) / (1.0 - r);
    return res;
}

SeriesResult neumann_series_apply(const SymMatrix& h, double lambda, const Vec& u, int p_max) {
    return neumann_series_apply(h, lambda, u, p_max, spectral_norm(h));
}

std::pair<Vec, double> neumann_reconstruct(const EigenSystem& e_base, const SymMatrix& h, int t,
                                           const EigenSystem& e_pert, int p_max, double h_norm) {
    const int n = h.size();
    if (t < 0 || t >= e_pert.count()) throw IndexOutOfRange("neumann_reconstruct: t out of range");
    const double pert_lambda = e_pert.values[t];
    if (!(std::abs(pert_lambda) > h_norm))
        throw SpectralDominance("neumann_reconstruct: requires ||H|| < |pert_lambda_t|");
    const Vec& vt = e_pert.vectors[t];

    // The series is linear in its seed vector, so the double sum collapses to
    // one truncated series applied to w0 = sum_s (lambda_s/pert_lambda) <v_t,u_s> u_s.
    Vec w0(n, 0.0);
    for (int s = 0; s < e_base.count(); ++s) {
        const double coef = e_base.values[s] / pert_lambda * dot(vt, e_base.vectors[s]);
        if (coef != 0.0) axpy(coef, e_base.vectors[s], w0);
    }

    Vec rhs = w0;
    Vec w = w0;
    for (int p = 1; p <= p_max; ++p) {
        w = h.matvec(w);
        scale_inplace(w, 1.0 / pert_lambda);
        axpy(1.0, w, rhs);
    }

    Vec diff = rhs;
    axpy(-1.0, vt, diff);
    return {rhs, norm2(diff)};
}

std::pair<Vec, double> neumann_reconstruct(const EigenSystem& e_base, const SymMatrix& h, int t,
                                           const EigenSystem& e_pert, int p_max) {
    return neumann_reconstruct(e_base, h, t, e_pert, p_max, spectral_norm(h));
}

std::pair<double, double> interaction_mc(int n, int k, double xi, const Vec& u, int trials,
                                         std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("interaction_mc: n must be >= 2");
    if (k < 1) throw std::invalid_argument("interaction_mc: k must be >= 1");
    if (trials < 1) throw std::invalid_argument("interaction_mc: trials must be >= 1");
    if (static_cast<int>(u.size()) != n) throw DimMismatch("interaction_mc: u has wrong length");
    if (std::abs(norm_inf(u) - 1.0) > 1e-9)
        throw std::invalid_argument("interaction_mc: u must have unit inf-norm");

    const double kappa = 0.5;
    const double ln_n = std::log(static_cast<double>(n));
    const double cap = kappa / 8.0 * std::pow(ln_n, xi);
    if (static_cast<double>(k) > cap)
        throw KTooLarge("interaction_mc: k exceeds (kappa/8)(log n)^xi");

    const double threshold = std::pow(ln_n, k * xi);
    const double entry = 1.0 / std::sqrt(static_cast<double>(n));

    int exceed = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const SymMatrix x = random_symmetric_rademacher(n, derive_seed(seed, trial), entry);
        Vec w = u;
        for (int p = 0; p < k; ++p) w = x.matvec(w);
        if (norm_inf(w) >= threshold) ++exceed;
    }

    const double mu = 2.0 / (kappa + 1.0);
    const double ln_mu = std::log(mu);
    const double log_mu_n = ln_n / ln_mu;
    const double log_mu_e = 1.0 / ln_mu;
    const double exponent = -0.25 * std::pow(log_mu_n, xi - 1.0) * std::pow(log_mu_e, -xi);
    const double bound_freq = std::min(1.0, std::exp(exponent * ln_n));
    return {static_cast<double>(exceed) / trials, bound_freq};
}

} // namespace mpt
