#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mpt/blockmodel.hpp"
#include "mpt/bounds.hpp"
#include "mpt/clustering.hpp"
#include "mpt/eigen.hpp"
#include "mpt/experiments.hpp"
#include "mpt/neumann.hpp"
#include "mpt/subspace.hpp"

namespace py = pybind11;

namespace {

mpt::SymMatrix to_matrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1))
        throw std::invalid_argument("expected a square 2-d array");
    const int n = static_cast<int>(a.shape(0));
    std::vector<double> flat(a.data(), a.data() + static_cast<std::size_t>(n) * n);
    return mpt::SymMatrix::from_flat(n, flat);
}

py::array_t<double> from_matrix(const mpt::SymMatrix& m) {
    const int n = m.size();
    py::array_t<double> out({n, n});
    std::copy(m.flat().begin(), m.flat().end(), out.mutable_data());
    return out;
}

py::array_t<double> from_vec(const mpt::Vec& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

mpt::Vec to_vec(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
    return mpt::Vec(a.data(), a.data() + a.shape(0));
}

py::tuple eigensystem_tuple(const mpt::EigenSystem& e) {
    py::array_t<double> values(static_cast<py::ssize_t>(e.values.size()));
    std::copy(e.values.begin(), e.values.end(), values.mutable_data());
    const py::ssize_t k = static_cast<py::ssize_t>(e.vectors.size());
    const py::ssize_t n = k > 0 ? static_cast<py::ssize_t>(e.vectors[0].size()) : 0;
    py::array_t<double> vectors({k, n});
    for (py::ssize_t i = 0; i < k; ++i)
        std::copy(e.vectors[i].begin(), e.vectors[i].end(), vectors.mutable_data(i, 0));
    return py::make_tuple(values, vectors);
}

mpt::OrthonormalBasis to_basis(const py::array_t<double, py::array::c_style | py::array::forcecast>& rows) {
    if (rows.ndim() != 2) throw std::invalid_argument("expected a 2-d array of basis rows");
    std::vector<mpt::Vec> vs;
    for (py::ssize_t i = 0; i < rows.shape(0); ++i)
        vs.emplace_back(rows.data(i, 0), rows.data(i, 0) + rows.shape(1));
    return mpt::OrthonormalBasis::from_vectors(std::move(vs));
}

} // namespace

PYBIND11_MODULE(_mpt, m) {
    m.doc() = "matrix perturbation toolkit: symmetric eigendecomposition, perturbation "
              "bounds, Neumann series, blockmodels and spectral clustering";

    using DArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

    // core linear algebra
    m.def(
        "sym_eigen",
        [](const DArray& a, double tol) { return eigensystem_tuple(mpt::sym_eigen(to_matrix(a), tol)); },
        py::arg("matrix"), py::arg("tol") = 1e-11,
        "Jacobi eigendecomposition; returns (values descending, row-stacked eigenvectors).");
    m.def(
        "spectral_norm", [](const DArray& a) { return mpt::spectral_norm(to_matrix(a)); },
        py::arg("matrix"));
    m.def(
        "rank_k_reconstruct",
        [](const DArray& a, int k, double tol) {
            return from_matrix(mpt::rank_k_reconstruct(mpt::sym_eigen(to_matrix(a), tol), k));
        },
        py::arg("matrix"), py::arg("k"), py::arg("tol") = 1e-11,
        "Top-k (by magnitude) spectral reconstruction of a symmetric matrix.");
    m.def(
        "quad_form",
        [](const DArray& x, const DArray& h, const DArray& y) {
            return mpt::quad_form(to_vec(x), to_matrix(h), to_vec(y));
        },
        py::arg("x"), py::arg("h"), py::arg("y"));
    m.def(
        "principal_angles",
        [](const DArray& u, const DArray& v) {
            return mpt::principal_angles(to_basis(u), to_basis(v)).angles;
        },
        py::arg("u_rows"), py::arg("v_rows"),
        "Canonical angles (ascending) between the row-spanned subspaces.");
    m.def(
        "align_basis",
        [](const DArray& x, const DArray& y) {
            const auto aligned = mpt::align_basis(to_basis(x), to_basis(y));
            py::array_t<double> out({static_cast<py::ssize_t>(aligned.vectors.size()),
                                     static_cast<py::ssize_t>(aligned.dim)});
            for (py::ssize_t i = 0; i < static_cast<py::ssize_t>(aligned.vectors.size()); ++i)
                std::copy(aligned.vectors[i].begin(), aligned.vectors[i].end(),
                          out.mutable_data(i, 0));
            return out;
        },
        py::arg("x_rows"), py::arg("y_rows"),
        "Rotate the X basis within its span to pair with the rows of Y.");

    // perturbation bounds
    m.def(
        "weyl_interval",
        [](double lambda_t, double h_norm) {
            const auto r = mpt::weyl_interval(lambda_t, h_norm);
            return py::make_tuple(*r.lower, *r.upper);
        },
        py::arg("lambda_t"), py::arg("h_norm"));
    m.def(
        "dk_simple_sin",
        [](const std::vector<double>& pert, double lambda_t, int t, double h_norm) {
            return mpt::dk_simple_sin(pert, lambda_t, t, h_norm).value();
        },
        py::arg("perturbed_values"), py::arg("lambda_t"), py::arg("t"), py::arg("h_norm"));
    m.def(
        "dk_subspace_sin",
        [](const std::vector<double>& values, int r, int s, double h_norm) {
            return mpt::dk_subspace_sin(values, r, s, h_norm).value();
        },
        py::arg("values"), py::arg("r"), py::arg("s"), py::arg("h_norm"));
    m.def(
        "eigval_interval_top",
        [](const std::vector<double>& values, int T, int t, double h, double h_norm) {
            const auto r = mpt::eigval_interval_top(values, T, t, h, h_norm);
            return py::make_tuple(r.lower, r.upper, r.preconditions_met);
        },
        py::arg("values"), py::arg("T"), py::arg("t"), py::arg("h"), py::arg("h_norm"));
    m.def(
        "eigval_interval_bottom",
        [](const std::vector<double>& values, int s_down, int t, double h, double h_norm) {
            const auto r = mpt::eigval_interval_bottom(values, s_down, t, h, h_norm);
            return py::make_tuple(r.lower, r.upper, r.preconditions_met);
        },
        py::arg("values"), py::arg("s_down"), py::arg("t"), py::arg("h"), py::arg("h_norm"));
    m.def("hoeffding_tail", &mpt::hoeffding_tail, py::arg("gamma"), py::arg("sigma"));
    m.def(
        "zeta_tail_bound",
        [](double gamma, double xi, double kappa, double lambda, double n, double h_norm,
           double u_inf, double u_two) {
            mpt::ZetaBoundParams p{gamma, xi, kappa, lambda, n, h_norm, u_inf, u_two};
            return mpt::zeta_tail_bound(p);
        },
        py::arg("gamma"), py::arg("xi"), py::arg("kappa"), py::arg("lambda_"), py::arg("n"),
        py::arg("h_norm"), py::arg("u_inf"), py::arg("u_two"),
        "Returns (bound, literal failure probability).");

    // Neumann series
    m.def(
        "neumann_zeta",
        [](const DArray& h, double lambda, const DArray& u, int p_max) {
            const auto r = mpt::neumann_series_apply(to_matrix(h), lambda, to_vec(u), p_max);
            return py::make_tuple(from_vec(r.partial), from_vec(r.per_entry_abs), r.tail_bound);
        },
        py::arg("h"), py::arg("lambda_"), py::arg("u"), py::arg("p_max"),
        "Truncated series sum and the per-entry absolute tail (empirical zeta).");

    // blockmodel + clustering
    m.def(
        "sample_sbm",
        [](int k, int m_per, const DArray& p0, double rho, std::uint64_t seed,
           bool no_self_loops) {
            const auto bm = mpt::make_balanced_sbm(k, m_per, to_matrix(p0), rho);
            const auto g = mpt::sample_graph(bm, seed, no_self_loops);
            return py::make_tuple(from_matrix(g.a), from_matrix(g.m), bm.z);
        },
        py::arg("k"), py::arg("m"), py::arg("p0"), py::arg("rho"), py::arg("seed"),
        py::arg("no_self_loops") = false,
        "Returns (adjacency, edge probability matrix, assignment).");
    m.def(
        "exact_sbm_spectrum",
        [](int k, int m_per, const DArray& p0, double rho) {
            return eigensystem_tuple(
                mpt::exact_sbm_spectrum(mpt::make_balanced_sbm(k, m_per, to_matrix(p0), rho)));
        },
        py::arg("k"), py::arg("m"), py::arg("p0"), py::arg("rho"));
    m.def(
        "cluster",
        [](const DArray& a, int k, std::optional<double> tau, double xi, double c,
           std::optional<double> rho) {
            mpt::ClusterConfig cfg;
            cfg.K = k;
            cfg.tau = tau;
            cfg.xi = xi;
            cfg.c = c;
            cfg.rho = rho;
            const auto got = mpt::cluster(to_matrix(a), cfg);
            return got.labels;
        },
        py::arg("a"), py::arg("k"), py::arg("tau") = std::nullopt, py::arg("xi") = 1.1,
        py::arg("c") = 1.0, py::arg("rho") = std::nullopt,
        "Rank-k reconstruction + column thresholding + connected components.");
    m.def("auto_tau", &mpt::auto_tau, py::arg("rho"), py::arg("n"), py::arg("xi"),
          py::arg("c") = 1.0);
    m.def(
        "recovery_check",
        [](const std::vector<int>& found, const std::vector<int>& truth) {
            return mpt::recovery_check(mpt::Clustering::from_labels(found),
                                       mpt::Clustering::from_labels(truth));
        },
        py::arg("found"), py::arg("truth"),
        "Returns (exact as set-partitions, misclassified count).");
    m.def(
        "matrix_errors",
        [](const DArray& m_hat, const DArray& mbase) {
            return mpt::matrix_errors(to_matrix(m_hat), to_matrix(mbase));
        },
        py::arg("m_hat"), py::arg("m"), "Returns (max-norm, Frobenius norm) of the difference.");

    m.def(
        "run_verification_suite",
        [](std::uint64_t seed, int instances) {
            const auto r = mpt::run_verification_suite(seed, instances);
            return py::make_tuple(r.checks_run, r.violations.size());
        },
        py::arg("seed"), py::arg("instances") = 100,
        "Returns (checks run, violations) of the bound soundness sweep.");
}
