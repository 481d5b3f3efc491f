#include "mpt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "mpt/bounds.hpp"
#include "mpt/clustering.hpp"
#include "mpt/errors.hpp"
#include "mpt/neumann.hpp"
#include "mpt/rng.hpp"
#include "mpt/subspace.hpp"

namespace mpt {

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class CsvFile {
  public:
    CsvFile(const std::string& path, const std::string& schema) {
        if (path.empty()) return;
        out_.open(path);
        if (!out_) throw std::invalid_argument("cannot write CSV file: " + path);
        out_ << "# schema=mpt.v1 " << schema << "\n";
    }
    bool open() const { return out_.is_open(); }
    void line(const std::string& s) {
        if (out_.is_open()) out_ << s << "\n";
    }

  private:
    std::ofstream out_;
};

int lanczos_steps_for(int n) { return std::min(n, 120); }

std::uint64_t row_seed(const ExperimentConfig& cfg, int n, int trial) {
    return derive_seed(derive_seed(cfg.base_seed, static_cast<std::uint64_t>(n)),
                       static_cast<std::uint64_t>(trial));
}

double spectral_norm_of(const EigenSystem& ritz) {
    return std::max(std::abs(ritz.values.front()), std::abs(ritz.values.back()));
}

// Full descending spectrum of the blockmodel mean matrix: the K lifted
// eigenvalues padded with the n-K exact zeros.
std::vector<double> full_sbm_values(const EigenSystem& lifted, int n) {
    std::vector<double> values(lifted.values);
    values.resize(n, 0.0);
    std::sort(values.begin(), values.end(), std::greater<double>());
    return values;
}

} // namespace

double ExperimentConfig::rho_at(int n) const {
    double r;
    if (rho_const) {
        r = *rho_const;
    } else {
        r = std::pow(std::log(static_cast<double>(n)), rho_eps) / n;
    }
    if (!(r > 0.0) || r > 1.0)
        throw InvalidProbability("experiment: rho rule leaves (0,1] at n=" + std::to_string(n));
    return r;
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    if (n_list.empty()) throw std::invalid_argument("experiment: empty n list");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("experiment: n list must be strictly ascending");
    if (K < 1 || p0.size() != K) throw DimMismatch("experiment: P0 must be K x K");
    for (int n : n_list) {
        if (n % K != 0 || n / K < 2)
            throw std::invalid_argument("experiment: every n must be a multiple of K with n/K >= 2");
    }
}

EigenSystem lanczos_extreme(const SymMatrix& s, int steps, std::uint64_t seed) {
    const int n = s.size();
    const int m_cap = std::max(1, std::min(steps, n));

    SplitMix64 g(seed);
    Vec v(n);
    for (double& x : v) x = g.next_double(-1.0, 1.0);
    scale_inplace(v, 1.0 / norm2(v));

    std::vector<Vec> basis;
    basis.reserve(m_cap);
    std::vector<double> alpha, beta;
    Vec prev(n, 0.0);
    double beta_prev = 0.0;
    const double breakdown = 1e-13 * std::max(1.0, s.frobenius_norm());

    for (int j = 0; j < m_cap; ++j) {
        basis.push_back(v);
        Vec w = s.matvec(v);
        const double a = dot(w, v);
        alpha.push_back(a);
        axpy(-a, v, w);
        if (j > 0) axpy(-beta_prev, prev, w);
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& b : basis) axpy(-dot(w, b), b, w);
        const double bnorm = norm2(w);
        if (j + 1 == m_cap || bnorm <= breakdown) break;
        beta.push_back(bnorm);
        prev = v;
        v = w;
        scale_inplace(v, 1.0 / bnorm);
        beta_prev = bnorm;
    }

    const int m = static_cast<int>(alpha.size());
    SymMatrix t(m);
    for (int i = 0; i < m; ++i) {
        t.set(i, i, alpha[i]);
        if (i + 1 < m) t.set(i, i + 1, beta[i]);
    }
    const EigenSystem small = sym_eigen(t, 1e-12);

    EigenSystem ritz;
    ritz.values = small.values;
    ritz.vectors.assign(m, Vec(n, 0.0));
    for (int k = 0; k < m; ++k) {
        for (int i = 0; i < m; ++i) axpy(small.vectors[k][i], basis[i], ritz.vectors[k]);
        const double nrm = norm2(ritz.vectors[k]);
        if (nrm > 0.0) scale_inplace(ritz.vectors[k], 1.0 / nrm);
        canonicalize_sign(ritz.vectors[k]);
    }
    return ritz;
}

std::vector<EigvalRow> run_eigval_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    CsvFile csv(cfg.out_path, "experiment=eigval");
    csv.line("n,trial,seed,lambda_t,pert_lambda_t,abs_err,h_norm,h_emp,lower,upper,"
             "preconditions_met,contains");

    std::vector<EigvalRow> rows;
    for (int n : cfg.n_list) {
        const int m = n / cfg.K;
        const Blockmodel bm = make_balanced_sbm(cfg.K, m, cfg.p0, cfg.rho_at(n));
        const EigenSystem lifted = exact_sbm_spectrum(bm);
        const std::vector<double> values = full_sbm_values(lifted, n);

        for (int trial = 0; trial < cfg.trials; ++trial) {
            EigvalRow r;
            r.n = n;
            r.trial = trial;
            r.seed = row_seed(cfg, n, trial);
            const SampledGraph g = sample_graph(bm, r.seed);

            const EigenSystem ra = lanczos_extreme(g.a, lanczos_steps_for(n), derive_seed(r.seed, 11));
            const EigenSystem rh = lanczos_extreme(g.h, lanczos_steps_for(n), derive_seed(r.seed, 13));
            r.lambda_t = values[0];
            r.pert_lambda_t = ra.values[0];
            r.abs_err = std::abs(r.pert_lambda_t - r.lambda_t);
            r.h_norm = spectral_norm_of(rh);

            // empirical h: exact sup of |<x,Hx>| over the span of the top K
            // exact eigenvectors, via the K x K restriction
            SymMatrix b(cfg.K);
            std::vector<Vec> hu(cfg.K);
            for (int i = 0; i < cfg.K; ++i) hu[i] = g.h.matvec(lifted.vectors[i]);
            for (int i = 0; i < cfg.K; ++i)
                for (int j = i; j < cfg.K; ++j) b.set(i, j, dot(lifted.vectors[j], hu[i]));
            r.h_emp = spectral_norm(b);

            const BoundReport rep = eigval_interval_top(values, cfg.K - 1, 0, r.h_emp, r.h_norm);
            r.lower = rep.lower;
            r.upper = rep.upper;
            r.preconditions_met = rep.preconditions_met;
            const double tol = 1e-6 * std::max(1.0, std::abs(r.lambda_t));
            r.contains = rep.preconditions_met && r.pert_lambda_t >= *rep.lower - tol &&
                         r.pert_lambda_t <= *rep.upper + tol;

            std::ostringstream os;
            os << r.n << ',' << r.trial << ',' << r.seed << ',' << g17(r.lambda_t) << ','
               << g17(r.pert_lambda_t) << ',' << g17(r.abs_err) << ',' << g17(r.h_norm) << ','
               << g17(r.h_emp) << ',' << (r.lower ? g17(*r.lower) : "") << ','
               << (r.upper ? g17(*r.upper) : "") << ',' << r.preconditions_met << ',' << r.contains;
            csv.line(os.str());
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

std::vector<EigvecRow> run_eigvec_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    CsvFile csv(cfg.out_path, "experiment=eigvec");
    csv.line("n,trial,seed,v2_err,vinf_err,ratio,dk_sin_bound,entrywise_dk_bound");

    std::vector<EigvecRow> rows;
    for (int n : cfg.n_list) {
        const int m = n / cfg.K;
        const Blockmodel bm = make_balanced_sbm(cfg.K, m, cfg.p0, cfg.rho_at(n));
        const EigenSystem lifted = exact_sbm_spectrum(bm);
        const std::vector<double> values = full_sbm_values(lifted, n);
        const GapInfo info = gap_info(values);

        for (int trial = 0; trial < cfg.trials; ++trial) {
            EigvecRow r;
            r.n = n;
            r.trial = trial;
            r.seed = row_seed(cfg, n, trial);
            const SampledGraph g = sample_graph(bm, r.seed);

            const EigenSystem ra = lanczos_extreme(g.a, lanczos_steps_for(n), derive_seed(r.seed, 11));
            const EigenSystem rh = lanczos_extreme(g.h, lanczos_steps_for(n), derive_seed(r.seed, 13));
            const double h_norm = spectral_norm_of(rh);

            Vec u = lifted.vectors[0];
            const Vec& vt = ra.vectors[0];
            if (dot(u, vt) < 0.0)
                for (double& x : u) x = -x;

            Vec diff = vt;
            axpy(-1.0, u, diff);
            r.v2_err = norm2(diff);
            r.vinf_err = norm_inf(diff);
            r.ratio = r.v2_err > 0.0 ? r.vinf_err / r.v2_err : 0.0;
            r.dk_sin_bound = dk_simple_sin(ra.values, values[0], 0, h_norm).value();

            // entrywise bound with empirical zeta at lambda_0; zero-eigenvalue
            // terms vanish so only the K lifted vectors are needed
            const int p_max = choose_p_max(h_norm, values[0], 1.0, 1e-10, 200);
            std::vector<Vec> vecs(n), zetas(n);
            for (int s = 0; s < cfg.K; ++s) {
                vecs[s] = lifted.vectors[s];
                zetas[s] =
                    neumann_series_apply(g.h, values[0], lifted.vectors[s], p_max, h_norm)
                        .per_entry_abs;
            }
            double worst = 0.0;
            for (int a = 0; a < n; ++a)
                worst = std::max(worst,
                                 entrywise_bound_dk(values, info, h_norm, 0, vecs, zetas, a));
            r.entrywise_dk_bound = worst;

            std::ostringstream os;
            os << r.n << ',' << r.trial << ',' << r.seed << ',' << g17(r.v2_err) << ','
               << g17(r.vinf_err) << ',' << g17(r.ratio) << ',' << g17(r.dk_sin_bound) << ','
               << g17(r.entrywise_dk_bound);
            csv.line(os.str());
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

std::vector<RecoveryRow> run_recovery_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    CsvFile csv(cfg.out_path, "experiment=recovery");
    csv.line("n,rho,trial,seed,exact,misclassified,tau,c,max_norm_err,frob_err,entrywise_scale");

    std::vector<RecoveryRow> rows;
    for (int n : cfg.n_list) {
        const int m = n / cfg.K;
        const double rho = cfg.rho_at(n);
        const Blockmodel bm = make_balanced_sbm(cfg.K, m, cfg.p0, rho);
        const SymMatrix mean = edge_prob_matrix(bm);
        const Clustering truth = Clustering::from_labels(bm.z);

        for (int trial = 0; trial < cfg.trials; ++trial) {
            RecoveryRow r;
            r.n = n;
            r.rho = rho;
            r.trial = trial;
            r.seed = row_seed(cfg, n, trial);
            const SampledGraph g = sample_graph(bm, r.seed);

            // threshold decisions happen at tau ~ rho^{3/4}; 1e-6 leaves five
            // orders of margin and saves a sweep or two at n in the hundreds
            const EigenSystem e = sym_eigen(g.a, 1e-6);
            const SymMatrix m_hat = rank_k_reconstruct(e, cfg.K);
            r.tau = auto_tau(rho, n, cfg.xi, cfg.c);
            const Clustering got = threshold_components(m_hat, r.tau);
            const auto [exact, missed] = recovery_check(got, truth);
            r.exact = exact;
            r.misclassified = missed;
            const auto [mx, fr] = matrix_errors(m_hat, mean);
            r.max_norm_err = mx;
            r.frob_err = fr;
            r.entrywise_scale = std::sqrt(rho / n) * std::pow(std::log(static_cast<double>(n)), cfg.xi);

            std::ostringstream os;
            os << r.n << ',' << g17(r.rho) << ',' << r.trial << ',' << r.seed << ',' << r.exact
               << ',' << r.misclassified << ',' << g17(r.tau) << ',' << g17(cfg.c) << ','
               << g17(r.max_norm_err) << ',' << g17(r.frob_err) << ',' << g17(r.entrywise_scale);
            csv.line(os.str());
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

namespace {

struct SweepContext {
    std::uint64_t seed;
    double fault;
    VerifyResult* result;
    CsvFile* csv;

    void check(bool ok, const char* name, int inst, int t, int alpha, double observed,
               double bound) {
        ++result->checks_run;
        if (ok) return;
        result->violations.push_back({name, inst, t, alpha, observed, bound});
        if (csv->open()) {
            std::ostringstream os;
            os << name << ',' << inst << ',' << t << ',' << alpha << ',' << g17(observed) << ','
               << g17(bound);
            csv->line(os.str());
        }
    }
};

} // namespace

VerifyResult run_verification_suite(std::uint64_t seed, int instances, const std::string& out_csv,
                                    double fault_h_scale) {
    if (instances < 1) throw std::invalid_argument("run_verification_suite: instances must be >= 1");
    VerifyResult result;
    result.instances = instances;
    CsvFile csv(out_csv, "report=verify-violations");
    csv.line("check,instance,t,alpha,observed,bound");
    SweepContext ctx{seed, fault_h_scale, &result, &csv};

    const double h_factors[3] = {0.01, 0.1, 0.3};
    for (int inst = 0; inst < instances; ++inst) {
        const int n = 3 + inst % 18;
        const double factor = h_factors[inst % 3];
        const std::uint64_t iseed = derive_seed(seed, inst);

        const SymMatrix m = random_symmetric_uniform(n, derive_seed(iseed, 1));
        const EigenSystem em = sym_eigen(m, 1e-12);
        double min_gap = std::numeric_limits<double>::infinity();
        for (int i = 0; i + 1 < n; ++i)
            min_gap = std::min(min_gap, em.values[i] - em.values[i + 1]);

        SymMatrix h0 = random_symmetric_uniform(n, derive_seed(iseed, 2));
        const double target = factor * min_gap;
        const SymMatrix h = (target / spectral_norm(h0)) * h0;
        const double h_true = spectral_norm(h);
        const double h_used = fault_h_scale * h_true;

        const EigenSystem ep = sym_eigen(m + h, 1e-12);
        double val_scale = std::max(std::abs(em.values.front()), std::abs(em.values.back()));
        const std::vector<Vec> u = align_eigenvectors(em, ep, 1e-9 * val_scale);
        const double slack = 1e-9 * std::max(1.0, val_scale + h_true);
        const GapInfo info = gap_info(em.values);

        // G[i][j] = <u_i, H u_j>, shared by the h computations below
        std::vector<Vec> hu(n);
        for (int i = 0; i < n; ++i) hu[i] = h.matvec(u[i]);
        std::vector<Vec> gram(n, Vec(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) gram[i][j] = dot(u[i], hu[j]);

        auto span_h = [&](int lo, int hi) { // sup |<x,Hx>| over span(u_lo..u_hi)
            const int d = hi - lo + 1;
            SymMatrix b(d);
            for (int i = 0; i < d; ++i)
                for (int j = i; j < d; ++j) b.set(i, j, gram[lo + i][lo + j]);
            return spectral_norm(b) + 1e-12 * std::max(1.0, h_true);
        };

        for (int t = 0; t < n; ++t) {
            // Weyl
            ctx.check(std::abs(ep.values[t] - em.values[t]) <= h_used + slack, "weyl", inst, t, -1,
                      std::abs(ep.values[t] - em.values[t]), h_used);

            const double cos_t = std::abs(dot(ep.vectors[t], u[t]));
            const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));

            // classical Davis-Kahan against the perturbed spectrum
            try {
                const double b = dk_simple_sin(ep.values, em.values[t], t, h_used).value();
                ctx.check(sin_t <= b + slack, "dk_simple_sin", inst, t, -1, sin_t, b);
            } catch (const ZeroGap&) {
            }

            // subspace Davis-Kahan for the block 0..t; angles recovered through
            // arccos have an absolute noise floor near sqrt(machine eps)
            try {
                const double b = dk_subspace_sin(em.values, 0, t, h_used).value();
                OrthonormalBasis ub, vb;
                ub.dim = vb.dim = n;
                for (int i = 0; i <= t; ++i) {
                    ub.vectors.push_back(u[i]);
                    vb.vectors.push_back(ep.vectors[i]);
                }
                const PrincipalAngles pa = principal_angles(ub, vb);
                double frob = 0.0;
                for (double ang : pa.angles) frob += std::sin(ang) * std::sin(ang);
                frob = std::sqrt(frob);
                const double angle_floor = 1e-7 * std::sqrt(static_cast<double>(t + 1));
                ctx.check(frob <= b + angle_floor + slack, "dk_subspace_sin", inst, t, -1, frob,
                          b);
            } catch (const NonPositiveGap&) {
            }

            // eigenvalue intervals
            if (t < n - 1) {
                const BoundReport rep = eigval_interval_top(em.values, t, t, span_h(0, t), h_used);
                ctx.check(ep.values[t] >= *rep.lower - slack, "eigval_top_lower", inst, t, -1,
                          ep.values[t], *rep.lower);
                if (rep.preconditions_met)
                    ctx.check(ep.values[t] <= *rep.upper + slack, "eigval_top_upper", inst, t, -1,
                              ep.values[t], *rep.upper);
            }
            if (t >= 1) {
                const BoundReport rep =
                    eigval_interval_bottom(em.values, t, t, span_h(t, n - 1), h_used);
                ctx.check(ep.values[t] <= *rep.upper + slack, "eigval_bottom_upper", inst, t, -1,
                          ep.values[t], *rep.upper);
                if (rep.preconditions_met)
                    ctx.check(ep.values[t] >= *rep.lower - slack, "eigval_bottom_lower", inst, t,
                              -1, ep.values[t], *rep.lower);
            }

            // angle bounds
            for (int s = 0; s < n; ++s) {
                if (s == t) continue;
                const auto [sin_b, cos_b] = dk_angle_bounds(info, h_used, t, s);
                if (s == (t + 1) % n)
                    ctx.check(sin_t <= sin_b + slack, "dk_angle_sin", inst, t, -1, sin_t, sin_b);
                const double cos_s = std::abs(dot(ep.vectors[t], u[s]));
                ctx.check(cos_s <= cos_b + slack, "dk_angle_cos", inst, t, s, cos_s, cos_b);
            }

            // entrywise bounds with empirical zeta
            if (std::abs(em.values[t]) <= h_true || std::abs(em.values[t]) <= h_used) continue;
            int p_max;
            try {
                p_max = choose_p_max(h_true, em.values[t], 1.0, 1e-12, 200);
            } catch (const NoConvergence&) {
                continue;
            }
            std::vector<Vec> zetas(n);
            for (int s = 0; s < n; ++s)
                zetas[s] =
                    neumann_series_apply(h, em.values[t], u[s], p_max, h_true).per_entry_abs;

            const double eps_t = std::abs(em.values[t] - ep.values[t]);
            std::vector<double> cos_all(n, 0.0);
            for (int s = 0; s < n; ++s)
                if (s != t) cos_all[s] = std::abs(dot(ep.vectors[t], u[s]));

            if (std::abs(em.values[t]) > eps_t) {
                for (int a = 0; a < n; ++a) {
                    const double err = std::abs(ep.vectors[t][a] - u[t][a]);
                    const double b1 =
                        entrywise_bound_dk(em.values, info, h_used, t, u, zetas, a);
                    ctx.check(err <= b1 + slack, "entrywise_dk", inst, t, a, err, b1);
                    const double b2 = entrywise_bound_general(em.values, eps_t, sin_t, cos_all, t,
                                                              u, zetas, a);
                    ctx.check(err <= b2 + slack, "entrywise_general", inst, t, a, err, b2);
                }
            }
        }
    }
    return result;
}

double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median: empty sample");
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return (n % 2 == 1) ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

double ols_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("ols_slope: need two samples of equal length");
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace mpt
