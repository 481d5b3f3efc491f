#include "mpt/blockmodel.hpp"

#include <cmath>
#include <fstream>

#include "mpt/errors.hpp"
#include "mpt/rng.hpp"

namespace mpt {

namespace {

void validate_p0(const SymMatrix& p0, double rho) {
    for (int i = 0; i < p0.size(); ++i)
        for (int j = 0; j < p0.size(); ++j)
            if (p0(i, j) < 0.0 || p0(i, j) > 1.0)
                throw InvalidProbability("blockmodel: P0 entries must lie in [0,1]");
    if (!(rho > 0.0) || rho > 1.0) throw InvalidProbability("blockmodel: rho must lie in (0,1]");
    if (rho * p0.max_abs() > 1.0)
        throw InvalidProbability("blockmodel: rho * max(P0) exceeds 1");
}

} // namespace

std::vector<int> Blockmodel::block_sizes() const {
    std::vector<int> sizes(K, 0);
    for (int zi : z) ++sizes[zi];
    return sizes;
}

Blockmodel make_balanced_sbm(int K, int m, const SymMatrix& p0, double rho) {
    if (K < 1 || m < 1) throw std::invalid_argument("make_balanced_sbm: K and m must be >= 1");
    if (p0.size() != K) throw DimMismatch("make_balanced_sbm: P0 must be K x K");
    std::vector<int> z(static_cast<std::size_t>(K) * m);
    for (int k = 0; k < K; ++k)
        for (int i = 0; i < m; ++i) z[static_cast<std::size_t>(k) * m + i] = k;
    return make_sbm(std::move(z), p0, rho);
}

Blockmodel make_sbm(std::vector<int> z, const SymMatrix& p0, double rho) {
    validate_p0(p0, rho);
    const int K = p0.size();
    if (z.empty()) throw std::invalid_argument("make_sbm: empty assignment");
    std::vector<bool> seen(K, false);
    for (int zi : z) {
        if (zi < 0 || zi >= K) throw std::invalid_argument("make_sbm: label out of range");
        seen[zi] = true;
    }
    for (bool s : seen)
        if (!s) throw std::invalid_argument("make_sbm: assignment is not surjective");
    Blockmodel bm;
    bm.n = static_cast<int>(z.size());
    bm.K = K;
    bm.z = std::move(z);
    bm.p0 = p0;
    bm.rho = rho;
    return bm;
}

SymMatrix edge_prob_matrix(const Blockmodel& bm) {
    SymMatrix m(bm.n);
    for (int i = 0; i < bm.n; ++i)
        for (int j = i; j < bm.n; ++j) m.set(i, j, bm.rho * bm.p0(bm.z[i], bm.z[j]));
    return m;
}

SampledGraph sample_graph(const Blockmodel& bm, std::uint64_t seed, bool no_self_loops) {
    SampledGraph g{SymMatrix(bm.n), edge_prob_matrix(bm), SymMatrix(bm.n), seed};
    SplitMix64 rng(seed);
    for (int i = 0; i < bm.n; ++i) {
        for (int j = i; j < bm.n; ++j) {
            const double u = rng.next_double();
            double aij = (u < g.m(i, j)) ? 1.0 : 0.0;
            if (no_self_loops && i == j) aij = 0.0;
            g.a.set(i, j, aij);
        }
    }
    g.h = g.a - g.m;
    return g;
}

EigenSystem exact_sbm_spectrum(const Blockmodel& bm) {
    const std::vector<int> sizes = bm.block_sizes();
    SymMatrix b(bm.K);
    for (int i = 0; i < bm.K; ++i)
        for (int j = i; j < bm.K; ++j)
            b.set(i, j, std::sqrt(static_cast<double>(sizes[i])) * bm.rho * bm.p0(i, j) *
                            std::sqrt(static_cast<double>(sizes[j])));
    const EigenSystem small = sym_eigen(b, 1e-12);

    EigenSystem lifted;
    lifted.values = small.values;
    lifted.vectors.assign(bm.K, Vec(bm.n));
    for (int k = 0; k < bm.K; ++k) {
        for (int i = 0; i < bm.n; ++i)
            lifted.vectors[k][i] =
                small.vectors[k][bm.z[i]] / std::sqrt(static_cast<double>(sizes[bm.z[i]]));
        canonicalize_sign(lifted.vectors[k]);
    }
    return lifted;
}

void save_labels(const std::string& path, const std::vector<int>& labels) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write labels file: " + path);
    for (int l : labels) out << l << "\n";
}

std::vector<int> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open labels file: " + path);
    std::vector<int> labels;
    int v = 0;
    while (in >> v) labels.push_back(v);
    if (labels.empty()) throw std::invalid_argument("empty labels file: " + path);
    return labels;
}

} // namespace mpt
