#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mpt/errors.hpp"
#include "mpt/experiments.hpp"
#include "mpt/rng.hpp"

using namespace mpt;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SymMatrix scalar_p0(double v) {
    SymMatrix p(1);
    p.set(0, 0, v);
    return p;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("lanczos_extreme agrees with sym_eigen at both ends of the spectrum") {
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 40 + 5 * trial;
        const SymMatrix m = random_symmetric_uniform(n, derive_seed(4000, trial));
        const EigenSystem full = sym_eigen(m, 1e-12);
        const EigenSystem ritz = lanczos_extreme(m, std::min(n, 120), derive_seed(4001, trial));
        const double scale = std::max(1.0, std::abs(full.values[0]));
        CHECK(std::abs(ritz.values.front() - full.values.front()) <= 1e-8 * scale);
        CHECK(std::abs(ritz.values.back() - full.values.back()) <= 1e-8 * scale);
        CHECK(std::abs(dot(ritz.vectors.front(), full.vectors.front())) >= 1.0 - 1e-8);
    }
}

TEST_CASE("experiment config validation") {
    ExperimentConfig cfg;
    cfg.n_list = {8, 4};
    cfg.p0 = scalar_p0(0.5);
    cfg.rho_const = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.n_list = {4, 8};
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.trials = 1;
    cfg.K = 3;
    CHECK_THROWS_AS(cfg.validate(), DimMismatch);

    ExperimentConfig rule;
    rule.n_list = {4};
    rule.p0 = scalar_p0(0.5);
    rule.rho_eps = 3.0;
    rule.trials = 1;
    CHECK(rule.rho_at(1000) == doctest::Approx(std::pow(std::log(1000.0), 3.0) / 1000.0));
    CHECK_THROWS_AS(rule.rho_at(20), InvalidProbability); // (log 20)^3 / 20 > 1
}

TEST_CASE("run_eigval_experiment: zero base matrix gives zero perturbations") {
    ExperimentConfig cfg;
    cfg.n_list = {4};
    cfg.K = 1;
    cfg.p0 = scalar_p0(0.0); // M = 0 so A = 0 and H = 0
    cfg.rho_const = 1.0;
    cfg.trials = 1;
    cfg.base_seed = 5;
    const auto rows = run_eigval_experiment(cfg);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].abs_err == 0.0);
    CHECK(rows[0].h_norm == 0.0);
    CHECK(rows[0].h_emp == 0.0);
}

TEST_CASE("run_eigval_experiment: row count, schema line and byte-identical reruns") {
    ExperimentConfig cfg;
    cfg.n_list = {4, 8};
    cfg.K = 1;
    cfg.p0 = scalar_p0(0.5);
    cfg.rho_const = 1.0;
    cfg.trials = 3;
    cfg.base_seed = 99;
    cfg.out_path = temp_path("mpt_eigval_a.csv");
    const auto rows = run_eigval_experiment(cfg);
    CHECK(rows.size() == 2 * 3);

    const std::string first = read_file(cfg.out_path);
    CHECK(first.rfind("# schema=mpt.v1 experiment=eigval", 0) == 0);

    cfg.out_path = temp_path("mpt_eigval_b.csv");
    run_eigval_experiment(cfg);
    CHECK(read_file(cfg.out_path) == first);
    std::filesystem::remove(temp_path("mpt_eigval_a.csv"));
    std::filesystem::remove(temp_path("mpt_eigval_b.csv"));

    // the interval certified by the bound actually contains the observation
    for (const auto& r : rows)
        if (r.preconditions_met) CHECK(r.contains);
}

TEST_CASE("run_eigvec_experiment: deterministic graph means zero errors") {
    ExperimentConfig cfg;
    cfg.n_list = {6};
    cfg.K = 1;
    cfg.p0 = scalar_p0(1.0); // A = M always, H = 0
    cfg.rho_const = 1.0;
    cfg.trials = 2;
    cfg.base_seed = 3;
    const auto rows = run_eigvec_experiment(cfg);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK(r.v2_err <= 1e-9);
        CHECK(r.vinf_err <= 1e-9);
        CHECK(r.dk_sin_bound <= 1e-12);
        CHECK(r.entrywise_dk_bound <= 1e-9);
    }
}

TEST_CASE("run_recovery_experiment: noise-free configuration recovers exactly") {
    ExperimentConfig cfg;
    cfg.n_list = {8};
    cfg.K = 2;
    SymMatrix p(2);
    p.set(0, 0, 1.0);
    p.set(1, 1, 1.0);
    cfg.p0 = p; // disjoint all-ones blocks: A = M deterministically
    cfg.rho_const = 1.0;
    cfg.trials = 2;
    cfg.base_seed = 17;
    const auto rows = run_recovery_experiment(cfg);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK(r.exact);
        CHECK(r.misclassified == 0);
        CHECK(r.max_norm_err <= 1e-9);
    }
}

TEST_CASE("run_recovery_experiment: max-norm error tracks sqrt(rho/n) log^xi n as n grows") {
    ExperimentConfig cfg;
    cfg.n_list = {96, 192, 384};
    cfg.K = 3;
    // moderate entries: at the small end of this grid rho is close to 1, and
    // base probabilities near 1 would make the Bernoulli noise degenerate
    SymMatrix p0(3);
    p0.set(0, 0, 0.60);
    p0.set(1, 1, 0.57);
    p0.set(2, 2, 0.54);
    p0.set(0, 1, 0.012);
    p0.set(0, 2, 0.03);
    p0.set(1, 2, 0.018);
    cfg.p0 = p0;
    cfg.rho_eps = 3.0;
    cfg.trials = 3;
    cfg.base_seed = 21;
    const auto rows = run_recovery_experiment(cfg);

    std::vector<double> med_err;
    for (int n : cfg.n_list) {
        std::vector<double> errs;
        for (const auto& r : rows)
            if (r.n == n) {
                errs.push_back(r.max_norm_err);
                // within a factor of 10 of the theoretical scale, both ways
                CHECK(r.max_norm_err <= 10.0 * r.entrywise_scale);
                CHECK(r.max_norm_err >= 0.1 * r.entrywise_scale);
            }
        med_err.push_back(median(errs));
    }
    // the error itself shrinks along the sweep
    CHECK(med_err[1] < med_err[0]);
    CHECK(med_err[2] < med_err[1]);
}

TEST_CASE("run_verification_suite: clean sweep passes and a corrupted norm is caught") {
    const VerifyResult clean = run_verification_suite(1, 60);
    CHECK(clean.instances == 60);
    CHECK(clean.checks_run > 1000);
    CHECK(clean.violations.empty());

    // sabotage: feeding the bounds one percent of the true ||H|| must trip
    const VerifyResult broken = run_verification_suite(1, 40, "", 0.01);
    CHECK(broken.violations.size() > 0);

    // violations report is written when requested
    const std::string path = temp_path("mpt_violations.csv");
    run_verification_suite(1, 10, path, 0.01);
    const std::string body = read_file(path);
    CHECK(body.rfind("# schema=mpt.v1 report=verify-violations", 0) == 0);
    CHECK(body.find("weyl") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("median and ols_slope helpers") {
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
    CHECK_THROWS_AS(median({}), std::invalid_argument);

    const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(2.5 * x - 1.0);
    CHECK(ols_slope(xs, ys) == doctest::Approx(2.5).epsilon(1e-12));
}
