#include <doctest.h>

#include <cmath>

#include "mpt/blockmodel.hpp"
#include "mpt/clustering.hpp"
#include "mpt/errors.hpp"
#include "mpt/rng.hpp"

using namespace mpt;

namespace {

SymMatrix strong_p0() {
    SymMatrix p(3);
    p.set(0, 0, 1.0);
    p.set(1, 1, 0.9);
    p.set(2, 2, 0.8);
    p.set(0, 1, 0.1);
    p.set(0, 2, 0.2);
    p.set(1, 2, 0.05);
    return p;
}

} // namespace

TEST_CASE("cluster: noise-free input recovers the ground truth at any valid tau") {
    const Blockmodel bm = make_balanced_sbm(3, 4, strong_p0(), 0.9);
    const SymMatrix m = edge_prob_matrix(bm);
    const Clustering truth = Clustering::from_labels(bm.z);

    ClusterConfig cfg;
    cfg.K = 3;
    cfg.tau = 0.3; // below the between-community column distance, above zero
    const Clustering got = cluster(m, cfg);
    const auto [exact, missed] = recovery_check(got, truth);
    CHECK(exact);
    CHECK(missed == 0);

    // tau above every column distance collapses everything into one cluster
    cfg.tau = 100.0;
    CHECK(cluster(m, cfg).num_clusters == 1);
}

TEST_CASE("cluster: invariant under simultaneous node permutation") {
    const Blockmodel bm = make_balanced_sbm(2, 5, [] {
        SymMatrix p(2);
        p.set(0, 0, 0.9);
        p.set(1, 1, 0.8);
        p.set(0, 1, 0.1);
        return p;
    }(), 1.0);
    const SampledGraph g = sample_graph(bm, 2024);

    ClusterConfig cfg;
    cfg.K = 2;
    cfg.tau = 0.4;
    const Clustering base = cluster(g.a, cfg);

    // a fixed permutation: reverse
    const int n = bm.n;
    SymMatrix perm(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) perm.set(i, j, g.a(n - 1 - i, n - 1 - j));
    const Clustering permuted = cluster(perm, cfg);

    std::vector<int> mapped(n);
    for (int i = 0; i < n; ++i) mapped[i] = permuted.labels[n - 1 - i];
    CHECK(Clustering::from_labels(mapped).labels == base.labels);
}

TEST_CASE("threshold_components: a tie at exactly tau is not an edge") {
    SymMatrix m(2);
    m.set(0, 1, 0.5); // columns (0, .5) and (.5, 0), inf-distance exactly 0.5
    CHECK(threshold_components(m, 0.5).num_clusters == 2);
    CHECK(threshold_components(m, 0.5 + 1e-9).num_clusters == 1);
    CHECK_THROWS_AS(threshold_components(m, 0.0), std::invalid_argument);
}

TEST_CASE("recovery_check: relabel invariance and counting") {
    const Clustering a = Clustering::from_labels({0, 0, 1, 1, 2});
    const Clustering same = Clustering::from_labels({2, 2, 0, 0, 1});
    auto [ex1, m1] = recovery_check(a, same);
    CHECK(ex1);
    CHECK(m1 == 0);

    const Clustering moved = Clustering::from_labels({0, 1, 1, 1, 2});
    auto [ex2, m2] = recovery_check(moved, a);
    CHECK_FALSE(ex2);
    CHECK(m2 == 1);

    CHECK_THROWS_AS(recovery_check(a, Clustering::from_labels({0, 1})), SizeMismatch);
}

TEST_CASE("recovery_check: greedy path when cluster counts differ") {
    const Clustering truth = Clustering::from_labels({0, 0, 0, 1, 1, 1});
    const Clustering split = Clustering::from_labels({0, 0, 2, 1, 1, 1});
    auto [exact, missed] = recovery_check(split, truth);
    CHECK_FALSE(exact);
    CHECK(missed == 1);
}

TEST_CASE("matrix_errors: exact values") {
    const SymMatrix a = random_symmetric_uniform(5, 8);
    auto [mx0, fr0] = matrix_errors(a, a);
    CHECK(mx0 == 0.0);
    CHECK(fr0 == 0.0);

    SymMatrix b = a;
    b.set(1, 3, a(1, 3) + 0.3);
    auto [mx, fr] = matrix_errors(b, a);
    CHECK(mx == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(fr == doctest::Approx(0.3 * std::sqrt(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(matrix_errors(a, random_symmetric_uniform(4, 9)), SizeMismatch);
}

TEST_CASE("Frobenius counterexample: small Frobenius error defeats clustering anyway") {
    const int m = 8;
    SymMatrix p0(2);
    p0.set(0, 0, 1.0);
    p0.set(1, 1, 0.9);
    p0.set(0, 1, 0.1);
    const double rho = 0.5;
    const Blockmodel bm = make_balanced_sbm(2, m, p0, rho);
    const SymMatrix mean = edge_prob_matrix(bm);
    const Clustering truth = Clustering::from_labels(bm.z);

    // node 0 (community 0) made to look exactly like node m (community 1)
    const SymMatrix fake = copy_node_profile(mean, 0, m);
    auto [mx, fr] = matrix_errors(fake, mean);
    const int n = bm.n;
    CHECK(fr <= 3.0 * std::sqrt(rho * n) * p0.max_abs());
    CHECK(fr >= 0.3 * rho * std::sqrt(static_cast<double>(n))); // Theta(sqrt(rho n)) for fixed rho
    CHECK(mx <= rho + 1e-12);                                   // Theta(rho)
    CHECK(mx >= 0.3 * rho);

    // a tau that recovers the clean matrix exactly fails on the doctored one
    const double tau = 0.5 * rho;
    const auto [clean_ok, clean_miss] = recovery_check(threshold_components(mean, tau), truth);
    CHECK(clean_ok);
    CHECK(clean_miss == 0);
    const auto [faked_ok, faked_miss] = recovery_check(threshold_components(fake, tau), truth);
    CHECK_FALSE(faked_ok);
    CHECK(faked_miss >= 1);
}

TEST_CASE("auto_tau: arithmetic, linearity in c, and decay relative to rho") {
    CHECK(auto_tau(1.0, std::exp(4.0), 1.0, 1.0) == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-12));
    CHECK(auto_tau(0.3, 500, 1.1, 2.0) == doctest::Approx(2.0 * auto_tau(0.3, 500, 1.1, 1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(auto_tau(0.0, 100, 1.1, 1.0), InvalidProbability);

    // tau/rho decreases along the rho = (log n)^3 / n grid
    double prev = 1e300;
    for (double n = 1000.0; n <= 1e6; n *= 10.0) {
        const double rho = std::pow(std::log(n), 3.0) / n;
        const double ratio = auto_tau(rho, n, 1.0, 1.0) / rho;
        CHECK(ratio < prev);
        prev = ratio;
    }
}

TEST_CASE("cluster: auto tau needs rho") {
    // at n = 64 the auto threshold (about 0.78) sits between the zero
    // within-community distance and the 0.85 between-community distance
    const Blockmodel bm = make_balanced_sbm(2, 32, [] {
        SymMatrix p(2);
        p.set(0, 0, 0.9);
        p.set(1, 1, 0.9);
        p.set(0, 1, 0.05);
        return p;
    }(), 1.0);
    const SymMatrix m = edge_prob_matrix(bm);
    ClusterConfig cfg;
    cfg.K = 2;
    CHECK_THROWS_AS(cluster(m, cfg), std::invalid_argument);
    cfg.rho = 1.0;
    const Clustering got = cluster(m, cfg);
    const auto [exact, missed] = recovery_check(got, Clustering::from_labels(bm.z));
    CHECK(exact);
    CHECK(missed == 0);
}
