#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpt/blockmodel.hpp"
#include "mpt/bounds.hpp"
#include "mpt/clustering.hpp"
#include "mpt/eigen.hpp"
#include "mpt/errors.hpp"
#include "mpt/experiments.hpp"
#include "mpt/neumann.hpp"
#include "mpt/subspace.hpp"

namespace {

// exit codes: 0 ok, 2 bad input, 3 precondition violated, 4 property violation
constexpr int kOk = 0;
constexpr int kBadInput = 2;
constexpr int kPrecondition = 3;
constexpr int kPropertyViolation = 4;

mpt::SymMatrix build_p0(int k, const std::string& p0_file, double diag, double off) {
    if (!p0_file.empty()) {
        mpt::SymMatrix p0 = mpt::SymMatrix::load(p0_file);
        if (p0.size() != k) throw mpt::DimMismatch("--p0 file must be K x K");
        return p0;
    }
    mpt::SymMatrix p0(k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) p0.set(i, j, i == j ? diag : off);
    return p0;
}

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct ExperimentFlags {
    std::vector<int> n_list{600};
    int k = 1;
    std::string p0_file;
    double p0_diag = 0.5, p0_off = 0.5;
    double rho = -1.0; // <0 means the (log n)^eps / n rule
    double eps = 3.0;
    int trials = 20;
    std::uint64_t seed = 0;
    double xi = 1.1, kappa = 0.5, c = 1.0;
    std::string out;

    mpt::ExperimentConfig to_config(const std::string& name) const {
        mpt::ExperimentConfig cfg;
        cfg.name = name;
        cfg.n_list = n_list;
        cfg.K = k;
        cfg.p0 = build_p0(k, p0_file, p0_diag, p0_off);
        if (rho >= 0.0) cfg.rho_const = rho;
        cfg.rho_eps = eps;
        cfg.trials = trials;
        cfg.base_seed = seed;
        cfg.xi = xi;
        cfg.kappa = kappa;
        cfg.c = c;
        cfg.out_path = out;
        return cfg;
    }
};

void add_experiment_flags(CLI::App& app, ExperimentFlags& f, bool needs_out) {
    app.add_option("--n-list", f.n_list, "matrix sizes, ascending");
    app.add_option("--k", f.k, "number of communities");
    app.add_option("--p0", f.p0_file, "K x K base matrix file (text format)");
    app.add_option("--p0-diag", f.p0_diag, "diagonal of the default P0");
    app.add_option("--p0-off", f.p0_off, "off-diagonal of the default P0");
    app.add_option("--rho", f.rho, "constant density; omit for (log n)^eps / n");
    app.add_option("--eps", f.eps, "exponent of the density rule");
    app.add_option("--trials", f.trials, "trials per size");
    app.add_option("--seed", f.seed, "base seed")->required();
    app.add_option("--xi", f.xi, "log exponent xi");
    app.add_option("--kappa", f.kappa, "kappa parameter");
    app.add_option("--c", f.c, "auto-threshold constant");
    auto* out = app.add_option("--out", f.out, "output CSV path");
    if (needs_out) out->required();
}

int run(int argc, char** argv) {
    CLI::App app{"matrix perturbation toolkit"};
    app.require_subcommand(1);

    // ---- gen-sbm ----
    auto* gen = app.add_subcommand("gen-sbm", "sample a stochastic blockmodel graph");
    struct {
        int k = 2, m = 10;
        std::string p0_file;
        double p0_diag = 0.8, p0_off = 0.2, rho = 1.0;
        std::uint64_t seed = 0;
        std::string out_a, out_m, out_z;
        bool no_self_loops = false;
    } gs;
    gen->add_option("--k", gs.k, "communities");
    gen->add_option("--m", gs.m, "nodes per community");
    gen->add_option("--p0", gs.p0_file, "K x K base matrix file");
    gen->add_option("--p0-diag", gs.p0_diag, "diagonal of the default P0");
    gen->add_option("--p0-off", gs.p0_off, "off-diagonal of the default P0");
    gen->add_option("--rho", gs.rho, "density in (0,1]");
    gen->add_option("--seed", gs.seed, "sampling seed")->required();
    gen->add_option("--out-a", gs.out_a, "adjacency matrix output")->required();
    gen->add_option("--out-m", gs.out_m, "edge probability matrix output");
    gen->add_option("--out-z", gs.out_z, "assignment output (one label per line)");
    gen->add_flag("--no-self-loops", gs.no_self_loops, "zero the sampled diagonal");

    // ---- eigen ----
    auto* eig = app.add_subcommand("eigen", "symmetric eigendecomposition");
    struct {
        std::string in, out, vectors_out;
        double tol = 1e-11;
    } ei;
    eig->add_option("--in", ei.in, "matrix file")->required();
    eig->add_option("--tol", ei.tol, "convergence tolerance in (0, 1e-4]");
    eig->add_option("--out", ei.out, "eigenvalues CSV (default stdout)");
    eig->add_option("--vectors-out", ei.vectors_out, "write eigenvectors as a matrix file");

    // ---- bounds ----
    auto* bnd = app.add_subcommand("bounds", "evaluate perturbation bounds for a (M, H) pair");
    struct {
        std::string m_file, h_file, out;
        int t = 0;
        int T = -1;
        int s_down = -1;
    } bo;
    bnd->add_option("--m", bo.m_file, "base matrix file")->required();
    bnd->add_option("--h-file", bo.h_file, "perturbation matrix file")->required();
    bnd->add_option("--t", bo.t, "eigenvalue index (0-based)");
    bnd->add_option("--T", bo.T, "top-span cutoff for the eigenvalue interval (default t)");
    bnd->add_option("--s-down", bo.s_down, "bottom-span start for the mirror interval");
    bnd->add_option("--out", bo.out, "output CSV (default stdout)");

    // ---- cluster ----
    auto* clu = app.add_subcommand("cluster", "blockmodel clustering of an adjacency matrix");
    struct {
        std::string a_file, tau = "auto", out;
        int k = 1;
        double xi = 1.1, c = 1.0, rho = -1.0;
    } cl;
    clu->add_option("--a", cl.a_file, "adjacency matrix file")->required();
    clu->add_option("--k", cl.k, "target rank K")->required();
    clu->add_option("--tau", cl.tau, "threshold value or 'auto'");
    clu->add_option("--xi", cl.xi, "auto-threshold exponent");
    clu->add_option("--c", cl.c, "auto-threshold constant");
    clu->add_option("--rho", cl.rho, "density (required with --tau auto)");
    clu->add_option("--out", cl.out, "labels output file")->required();

    // ---- zeta ----
    auto* zet = app.add_subcommand("zeta", "zeta tail bound, closed form or empirical");
    struct {
        double n = 0, lambda = 0, gamma = 0, xi = 1.1, kappa = 0.5, h_norm = 0, u_inf = 1,
               u_two = 1;
        std::string h_file, u_file;
        int p_max = 0;
    } ze;
    zet->add_option("--n", ze.n, "dimension (real-valued allowed)");
    zet->add_option("--lambda", ze.lambda, "reference eigenvalue")->required();
    zet->add_option("--gamma", ze.gamma, "moment scale");
    zet->add_option("--xi", ze.xi, "xi > 1");
    zet->add_option("--kappa", ze.kappa, "kappa in (0,1)");
    zet->add_option("--h-norm", ze.h_norm, "spectral norm of H");
    zet->add_option("--u-inf", ze.u_inf, "inf-norm of u");
    zet->add_option("--u-two", ze.u_two, "2-norm of u");
    zet->add_option("--h-file", ze.h_file, "empirical mode: perturbation matrix");
    zet->add_option("--u-file", ze.u_file, "empirical mode: vector as a labels-style file");
    zet->add_option("--p-max", ze.p_max, "empirical mode: truncation order (0 = auto)");

    // ---- experiment ----
    auto* exp = app.add_subcommand("experiment", "reproduce the scaling experiments");
    exp->require_subcommand(1);
    ExperimentFlags fe, fv, fr;
    auto* e1 = exp->add_subcommand("eigval", "eigenvalue perturbation vs Weyl");
    add_experiment_flags(*e1, fe, true);
    auto* e2 = exp->add_subcommand("eigvec", "eigenvector perturbation in 2- and inf-norm");
    add_experiment_flags(*e2, fv, true);
    auto* e3 = exp->add_subcommand("recovery", "exact recovery of communities");
    add_experiment_flags(*e3, fr, true);
    auto* e4 = exp->add_subcommand("verify", "bound soundness sweep");
    struct {
        std::uint64_t seed = 0;
        int instances = 1000;
        std::string out;
    } vf;
    e4->add_option("--seed", vf.seed, "sweep seed")->required();
    e4->add_option("--instances", vf.instances, "number of (M, H) instances");
    e4->add_option("--out", vf.out, "violations CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    try {
        if (gen->parsed()) {
            const mpt::SymMatrix p0 = build_p0(gs.k, gs.p0_file, gs.p0_diag, gs.p0_off);
            const mpt::Blockmodel bm = mpt::make_balanced_sbm(gs.k, gs.m, p0, gs.rho);
            const mpt::SampledGraph g = mpt::sample_graph(bm, gs.seed, gs.no_self_loops);
            g.a.save(gs.out_a);
            if (!gs.out_m.empty()) g.m.save(gs.out_m);
            if (!gs.out_z.empty()) mpt::save_labels(gs.out_z, bm.z);
        } else if (eig->parsed()) {
            const mpt::SymMatrix m = mpt::SymMatrix::load(ei.in);
            const mpt::EigenSystem e = mpt::sym_eigen(m, ei.tol);
            std::ostringstream os;
            os << "# schema=mpt.v1 report=eigenvalues\nt,value\n";
            for (int t = 0; t < e.count(); ++t) os << t << ',' << g17(e.values[t]) << "\n";
            if (ei.out.empty()) {
                std::cout << os.str();
            } else {
                std::ofstream f(ei.out);
                f << os.str();
            }
            if (!ei.vectors_out.empty()) {
                // columns are eigenvectors; written by hand since the matrix
                // file loader would reject a non-symmetric table
                std::ofstream f(ei.vectors_out);
                f << m.size() << "\n";
                for (int i = 0; i < m.size(); ++i) {
                    for (int t = 0; t < e.count(); ++t)
                        f << g17(e.vectors[t][i]) << (t + 1 == e.count() ? "" : " ");
                    f << "\n";
                }
            }
        } else if (bnd->parsed()) {
            const mpt::SymMatrix m = mpt::SymMatrix::load(bo.m_file);
            const mpt::SymMatrix h = mpt::SymMatrix::load(bo.h_file);
            if (h.size() != m.size()) throw mpt::DimMismatch("bounds: M and H sizes differ");
            const mpt::EigenSystem em = mpt::sym_eigen(m, 1e-12);
            const mpt::EigenSystem ep = mpt::sym_eigen(m + h, 1e-12);
            const double h_norm = mpt::spectral_norm(h);
            const int n = m.size();
            const int t = bo.t;
            if (t < 0 || t >= n) throw mpt::IndexOutOfRange("bounds: t out of range");
            const int T = bo.T < 0 ? t : bo.T;
            const int s_down = bo.s_down < 0 ? t : bo.s_down;

            std::ostringstream os;
            os << "# schema=mpt.v1 report=bounds\n" << mpt::BoundReport::csv_header() << "\n";
            auto weyl = mpt::weyl_interval(em.values[t], h_norm);
            weyl.t = t;
            os << weyl.csv_row() << "\n";
            os << mpt::dk_simple_sin(ep.values, em.values[t], t, h_norm).csv_row() << "\n";
            os << mpt::dk_subspace_sin(em.values, std::min(t, T), std::max(t, T), h_norm).csv_row()
               << "\n";
            if (T < n - 1) {
                mpt::OrthonormalBasis basis;
                basis.dim = n;
                for (int i = 0; i <= T; ++i) basis.vectors.push_back(em.vectors[i]);
                const auto [h_pair, h_span] = mpt::pairwise_h(h, basis);
                (void)h_pair;
                auto rep = mpt::eigval_interval_top(em.values, T, std::min(t, T), h_span, h_norm);
                rep.details.emplace_back("h_from_pairwise", 1.0);
                os << rep.csv_row() << "\n";
            }
            if (s_down >= 1) {
                mpt::OrthonormalBasis basis;
                basis.dim = n;
                for (int i = s_down; i < n; ++i) basis.vectors.push_back(em.vectors[i]);
                const auto [h_pair, h_span] = mpt::pairwise_h(h, basis);
                (void)h_pair;
                auto rep = mpt::eigval_interval_bottom(em.values, s_down, std::max(t, s_down),
                                                       h_span, h_norm);
                rep.details.emplace_back("h_from_pairwise", 1.0);
                os << rep.csv_row() << "\n";
            }
            if (bo.out.empty()) {
                std::cout << os.str();
            } else {
                std::ofstream f(bo.out);
                f << os.str();
            }
        } else if (clu->parsed()) {
            const mpt::SymMatrix a = mpt::SymMatrix::load(cl.a_file);
            mpt::ClusterConfig cfg;
            cfg.K = cl.k;
            cfg.xi = cl.xi;
            cfg.c = cl.c;
            if (cl.tau != "auto") {
                cfg.tau = std::stod(cl.tau);
            } else if (cl.rho > 0.0) {
                cfg.rho = cl.rho;
            } else {
                throw std::invalid_argument("cluster: --tau auto requires --rho");
            }
            const mpt::Clustering got = mpt::cluster(a, cfg);
            mpt::save_labels(cl.out, got.labels);
            std::cout << "clusters=" << got.num_clusters << "\n";
        } else if (zet->parsed()) {
            if (!ze.h_file.empty()) {
                const mpt::SymMatrix h = mpt::SymMatrix::load(ze.h_file);
                mpt::Vec u(h.size(), 0.0);
                if (!ze.u_file.empty()) {
                    std::ifstream f(ze.u_file);
                    for (double& x : u)
                        if (!(f >> x)) throw std::invalid_argument("zeta: short u file");
                } else {
                    for (double& x : u) x = 1.0 / std::sqrt(static_cast<double>(h.size()));
                }
                const double h_norm = mpt::spectral_norm(h);
                const int p_max = ze.p_max > 0
                                      ? ze.p_max
                                      : mpt::choose_p_max(h_norm, ze.lambda, mpt::norm2(u));
                const mpt::SeriesResult sr =
                    mpt::neumann_series_apply(h, ze.lambda, u, p_max, h_norm);
                std::cout << "# schema=mpt.v1 report=zeta-empirical\n"
                          << "zeta_inf,p_max,tail_bound,h_norm\n"
                          << g17(mpt::norm_inf(sr.per_entry_abs)) << ',' << sr.p_max << ','
                          << g17(sr.tail_bound) << ',' << g17(h_norm) << "\n";
            } else {
                mpt::ZetaBoundParams p;
                p.gamma = ze.gamma;
                p.xi = ze.xi;
                p.kappa = ze.kappa;
                p.lambda = ze.lambda;
                p.n = ze.n;
                p.h_norm = ze.h_norm;
                p.u_inf = ze.u_inf;
                p.u_two = ze.u_two;
                const auto [bound, fail] = mpt::zeta_tail_bound(p);
                std::cout << "# schema=mpt.v1 report=zeta-bound\nbound,fail_prob\n"
                          << g17(bound) << ',' << g17(fail) << "\n";
            }
        } else if (exp->parsed()) {
            if (e1->parsed()) {
                mpt::run_eigval_experiment(fe.to_config("eigval"));
            } else if (e2->parsed()) {
                mpt::run_eigvec_experiment(fv.to_config("eigvec"));
            } else if (e3->parsed()) {
                mpt::run_recovery_experiment(fr.to_config("recovery"));
            } else if (e4->parsed()) {
                const mpt::VerifyResult res =
                    mpt::run_verification_suite(vf.seed, vf.instances, vf.out);
                std::cout << "instances=" << res.instances << " checks=" << res.checks_run
                          << " violations=" << res.violations.size() << "\n";
                if (!res.violations.empty()) return kPropertyViolation;
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPrecondition;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
