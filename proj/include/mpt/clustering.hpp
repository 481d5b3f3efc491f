#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpt/eigen.hpp"
#include "mpt/sym_matrix.hpp"

namespace mpt {

/// A partition of node indices. Labels are canonical: cluster ids appear in
/// order of first occurrence and cover 0..num_clusters-1 with no gaps.
struct Clustering {
    std::vector<int> labels;
    int num_clusters = 0;

    static Clustering from_labels(std::vector<int> raw);
};

struct ClusterConfig {
    int K = 1;
    std::optional<double> tau;  // explicit threshold; unset means auto
    double xi = 1.1;            // exponent for the auto threshold
    double c = 1.0;             // auto threshold constant
    std::optional<double> rho;  // required for auto tau
    double eig_tol = 1e-10;
};

/// tau = c * rho^{3/4} n^{-1/4} (log n)^{xi/2}: the geometric mean of the two
/// consistency constraints (above sqrt(rho/n) log^xi n, below rho).
double auto_tau(double rho, double n, double xi, double c = 1.0);

/// Rank-K spectral reconstruction of A (top K eigenpairs by |value|, ties by
/// index) followed by column thresholding: nodes i,j are joined when
/// ||Mhat_i - Mhat_j||_inf < tau (strict), and clusters are the connected
/// components. Isolated nodes form singletons.
Clustering cluster(const SymMatrix& a, const ClusterConfig& cfg);

/// The thresholding + connected-components stage on an already-built
/// reconstruction (columns include the diagonal entries).
Clustering threshold_components(const SymMatrix& m_hat, double tau);

/// exact: the two partitions are equal as set-partitions (relabel-invariant).
/// misclassified: the minimum Hamming distance over label bijections when the
/// cluster counts match (exhaustive for small counts), otherwise n minus the
/// size of the best greedy cluster matching.
std::pair<bool, int> recovery_check(const Clustering& found, const Clustering& truth);

/// (max-norm, Frobenius norm) of m_hat - m.
std::pair<double, double> matrix_errors(const SymMatrix& m_hat, const SymMatrix& m);

/// Makes node dst's row/column an exact copy of node src's (the construction
/// behind the Frobenius-insufficiency counterexample: a small max-norm set of
/// changes that makes two nodes indistinguishable).
SymMatrix copy_node_profile(const SymMatrix& m, int dst, int src);

} // namespace mpt
