#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpt/eigen.hpp"
#include "mpt/sym_matrix.hpp"

namespace mpt {

/// Stochastic blockmodel: assignment z (0-based, surjective onto 0..K-1),
/// K x K symmetric base matrix P0 with entries in [0,1], and density rho in
/// (0,1] with rho * max(P0) <= 1. Edge probabilities M_ij = rho * P0[z_i][z_j].
struct Blockmodel {
    int n = 0;
    int K = 0;
    std::vector<int> z;
    SymMatrix p0{1};
    double rho = 1.0;

    std::vector<int> block_sizes() const;
};

/// Balanced model: nodes (k*m)..(k*m + m - 1) form community k, n = m*K.
Blockmodel make_balanced_sbm(int K, int m, const SymMatrix& p0, double rho);

/// General (possibly unbalanced) assignment.
Blockmodel make_sbm(std::vector<int> z, const SymMatrix& p0, double rho);

SymMatrix edge_prob_matrix(const Blockmodel& bm);

struct SampledGraph {
    SymMatrix a;
    SymMatrix m;
    SymMatrix h; // a - m
    std::uint64_t seed = 0;
};

/// A_ij ~ Bernoulli(M_ij) for j >= i (diagonal included), mirrored below.
/// Draws are consumed in row-major upper-triangle order, so samples are
/// reproducible across platforms. With no_self_loops the diagonal of A is
/// zeroed after sampling (its draws are still consumed, keeping the
/// off-diagonal pattern identical to the default).
SampledGraph sample_graph(const Blockmodel& bm, std::uint64_t seed, bool no_self_loops = false);

/// The K eigenpairs of M carried by the K x K reduction
/// diag(sqrt|F_k|) rho P0 diag(sqrt|F_k|) (= m rho P0 when balanced), with the
/// block-constant lifted eigenvectors. For rank-K P0 these are exactly the
/// nonzero eigenvalues of M. Values descending, canonical signs.
EigenSystem exact_sbm_spectrum(const Blockmodel& bm);

/// Assignment/labels file: one integer per line.
void save_labels(const std::string& path, const std::vector<int>& labels);
std::vector<int> load_labels(const std::string& path);

} // namespace mpt
