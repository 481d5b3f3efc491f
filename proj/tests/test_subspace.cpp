#include <doctest.h>

#include <cmath>

#include "mpt/errors.hpp"
#include "mpt/rng.hpp"
#include "mpt/subspace.hpp"

using namespace mpt;

namespace {

Vec axis(int n, int i) {
    Vec v(n, 0.0);
    v[i] = 1.0;
    return v;
}

// d random vectors in R^n, Gram-Schmidt orthonormalized
OrthonormalBasis random_basis(int n, int d, std::uint64_t seed) {
    SplitMix64 g(seed);
    std::vector<Vec> vs;
    while (static_cast<int>(vs.size()) < d) {
        Vec v(n);
        for (double& x : v) x = g.next_double(-1.0, 1.0);
        for (const Vec& u : vs) axpy(-dot(v, u), u, v);
        const double nrm = norm2(v);
        if (nrm < 1e-3) continue;
        scale_inplace(v, 1.0 / nrm);
        vs.push_back(v);
    }
    return OrthonormalBasis::from_vectors(vs);
}

// basis close to X: perturb each vector and re-orthonormalize
OrthonormalBasis nearby_basis(const OrthonormalBasis& x, double amount, std::uint64_t seed) {
    SplitMix64 g(seed);
    std::vector<Vec> vs;
    for (const Vec& v : x.vectors) {
        Vec w = v;
        for (double& e : w) e += amount * g.next_double(-1.0, 1.0);
        for (const Vec& u : vs) axpy(-dot(w, u), u, w);
        scale_inplace(w, 1.0 / norm2(w));
        vs.push_back(w);
    }
    return OrthonormalBasis::from_vectors(vs);
}

} // namespace

TEST_CASE("principal_angles: identical, orthogonal and rotated subspaces") {
    const auto u = OrthonormalBasis::from_vectors({axis(3, 0), axis(3, 1)});
    const auto same = principal_angles(u, u);
    for (double a : same.angles) CHECK(a == doctest::Approx(0.0).epsilon(1e-9));

    const auto e1 = OrthonormalBasis::from_vectors({axis(2, 0)});
    const auto e2 = OrthonormalBasis::from_vectors({axis(2, 1)});
    CHECK(principal_angles(e1, e2).max_angle() == doctest::Approx(M_PI / 2.0));

    const double phi = 0.2;
    const auto rot = OrthonormalBasis::from_vectors({Vec{std::cos(phi), std::sin(phi)}});
    CHECK(principal_angles(e1, rot).max_angle() == doctest::Approx(phi).epsilon(1e-10));
}

TEST_CASE("principal_angles: dimension mismatch") {
    const auto a = OrthonormalBasis::from_vectors({axis(3, 0)});
    const auto b = OrthonormalBasis::from_vectors({axis(3, 0), axis(3, 1)});
    CHECK_THROWS_AS(principal_angles(a, b), DimMismatch);
    const auto c = OrthonormalBasis::from_vectors({axis(4, 0)});
    CHECK_THROWS_AS(principal_angles(a, c), DimMismatch);
}

TEST_CASE("align_basis: permuted columns are recovered exactly") {
    const auto x = OrthonormalBasis::from_vectors({axis(4, 0), axis(4, 1), axis(4, 2)});
    const auto y = OrthonormalBasis::from_vectors({axis(4, 2), axis(4, 0), axis(4, 1)});
    const auto aligned = align_basis(x, y);
    for (int i = 0; i < 3; ++i)
        CHECK(dot(aligned.vectors[i], y.vectors[i]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("align_basis: one-dimensional sign flip") {
    Vec y{0.6, 0.8};
    Vec mx{-0.6, -0.8};
    const auto aligned = align_basis(OrthonormalBasis::from_vectors({mx}),
                                     OrthonormalBasis::from_vectors({y}));
    CHECK(dot(aligned.vectors[0], y) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("align_basis: in-plane rotation has zero principal angle and aligns exactly") {
    const double phi = 0.1;
    const auto x = OrthonormalBasis::from_vectors(
        {Vec{std::cos(phi), std::sin(phi), 0.0}, Vec{-std::sin(phi), std::cos(phi), 0.0}});
    const auto y = OrthonormalBasis::from_vectors({axis(3, 0), axis(3, 1)});
    CHECK(principal_angles(x, y).max_angle() == doctest::Approx(0.0).epsilon(1e-9));
    const auto aligned = align_basis(x, y);
    for (int i = 0; i < 2; ++i) {
        CHECK(dot(aligned.vectors[i], y.vectors[i]) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(dot(aligned.vectors[i], y.vectors[1 - i])) <= 1e-10);
    }
}

TEST_CASE("align_basis satisfies the alignment inequalities and preserves the span") {
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 4 + trial % 5;
        const int d = 1 + trial % 3;
        const auto x = random_basis(n, d, derive_seed(11, trial));
        const auto y = nearby_basis(x, 0.25, derive_seed(12, trial));

        const double theta = principal_angles(x, y).max_angle();
        if (theta > M_PI / 4.0) continue;
        const double delta2 = std::sin(theta) * std::sin(theta);

        const auto xhat = align_basis(x, y);
        for (int i = 0; i < d; ++i) {
            CHECK(dot(xhat.vectors[i], y.vectors[i]) >= 1.0 - delta2 - 1e-10);
            for (int j = 0; j < d; ++j) {
                if (i == j) continue;
                CHECK(std::abs(dot(xhat.vectors[i], y.vectors[j])) <= delta2 + 1e-10);
            }
        }

        // same projector => same span
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                double pa = 0.0, pb = 0.0;
                for (int i = 0; i < d; ++i) {
                    pa += x.vectors[i][a] * x.vectors[i][b];
                    pb += xhat.vectors[i][a] * xhat.vectors[i][b];
                }
                CHECK(std::abs(pa - pb) <= 1e-9);
            }
        }
    }
}

TEST_CASE("OrthonormalBasis validates orthonormality") {
    CHECK_THROWS_AS(OrthonormalBasis::from_vectors({Vec{1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(OrthonormalBasis::from_vectors({axis(2, 0), axis(2, 0)}),
                    std::invalid_argument);
}
