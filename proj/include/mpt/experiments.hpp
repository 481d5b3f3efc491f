#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpt/blockmodel.hpp"
#include "mpt/eigen.hpp"
#include "mpt/sym_matrix.hpp"

namespace mpt {

/// Shared parameterization of the experiment runners. rho is either a constant
/// or the sparse rule (log n)^eps / n. Every stochastic quantity derives from
/// base_seed, so outputs are byte-identical across runs.
struct ExperimentConfig {
    std::string name;
    std::vector<int> n_list;
    int K = 1;
    SymMatrix p0{1};
    std::optional<double> rho_const;
    double rho_eps = 3.0;
    int trials = 20;
    std::uint64_t base_seed = 1;
    double xi = 1.1;
    double kappa = 0.5;
    double c = 1.0;
    std::string out_path;

    double rho_at(int n) const;
    void validate() const;
};

struct EigvalRow {
    int n = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    double lambda_t = 0.0;
    double pert_lambda_t = 0.0;
    double abs_err = 0.0;
    double h_norm = 0.0; // Weyl bound
    double h_emp = 0.0;
    std::optional<double> lower, upper;
    bool preconditions_met = false;
    bool contains = false;
};

struct EigvecRow {
    int n = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    double v2_err = 0.0;
    double vinf_err = 0.0;
    double ratio = 0.0; // vinf/v2
    double dk_sin_bound = 0.0;
    double entrywise_dk_bound = 0.0; // max over entries
};

struct RecoveryRow {
    int n = 0;
    double rho = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    bool exact = false;
    int misclassified = 0;
    double tau = 0.0;
    double max_norm_err = 0.0;
    double frob_err = 0.0;
    double entrywise_scale = 0.0; // sqrt(rho/n) (log n)^xi
};

std::vector<EigvalRow> run_eigval_experiment(const ExperimentConfig& cfg);
std::vector<EigvecRow> run_eigvec_experiment(const ExperimentConfig& cfg);
std::vector<RecoveryRow> run_recovery_experiment(const ExperimentConfig& cfg);

struct VerifyViolation {
    std::string check;
    int instance = 0;
    int t = -1;
    int alpha = -1;
    double observed = 0.0;
    double bound = 0.0;
};

struct VerifyResult {
    int instances = 0;
    long long checks_run = 0;
    std::vector<VerifyViolation> violations;
};

/// Soundness sweep over seeded random (M, H) pairs, n in 3..20, ||H|| scaled
/// to {0.01, 0.1, 0.3} of the smallest eigengap. Verifies Weyl, both
/// Davis-Kahan variants, the eigenvalue intervals, the angle bounds and both
/// entrywise bounds (with empirical zeta, after basis alignment) against exact
/// eigensystems. fault_h_scale deliberately corrupts the ||H|| fed to the
/// bounds; tests use it to prove the sweep can fail.
VerifyResult run_verification_suite(std::uint64_t seed, int instances = 1000,
                                    const std::string& out_csv = "",
                                    double fault_h_scale = 1.0);

/// Fixed-step Lanczos with full reorthogonalization; returns the Ritz pairs
/// (descending values, canonical signs). Only the extreme pairs are converged;
/// interior ones are not to be trusted. The experiment harness uses this where
/// a full Jacobi decomposition per trial would be wasteful; it is validated
/// against sym_eigen in the test suite.
EigenSystem lanczos_extreme(const SymMatrix& s, int steps, std::uint64_t seed);

double median(std::vector<double> xs);
double ols_slope(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace mpt
