#include "mpt/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mpt/errors.hpp"

namespace mpt {

namespace {

// Iterative union-find with path halving and union by size.
class UnionFind {
  public:
    explicit UnionFind(int n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

  private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

} // namespace

Clustering Clustering::from_labels(std::vector<int> raw) {
    Clustering c;
    c.labels.resize(raw.size());
    std::vector<int> remap;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        int found = -1;
        for (std::size_t k = 0; k < remap.size(); ++k)
            if (remap[k] == raw[i]) {
                found = static_cast<int>(k);
                break;
            }
        if (found < 0) {
            found = static_cast<int>(remap.size());
            remap.push_back(raw[i]);
        }
        c.labels[i] = found;
    }
    c.num_clusters = static_cast<int>(remap.size());
    return c;
}

double auto_tau(double rho, double n, double xi, double c) {
    if (!(rho > 0.0) || rho > 1.0) throw InvalidProbability("auto_tau: rho must lie in (0,1]");
    if (!(n >= 2.0)) throw std::invalid_argument("auto_tau: n must be >= 2");
    return c * std::pow(rho, 0.75) * std::pow(n, -0.25) * std::pow(std::log(n), xi / 2.0);
}

Clustering threshold_components(const SymMatrix& m_hat, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("threshold_components: tau must be positive");
    const int n = m_hat.size();
    UnionFind uf(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            // column inf-distance with early exit at tau (edge iff strictly below)
            bool edge = true;
            for (int r = 0; r < n; ++r) {
                if (std::abs(m_hat(r, i) - m_hat(r, j)) >= tau) {
                    edge = false;
                    break;
                }
            }
            if (edge) uf.unite(i, j);
        }
    }
    std::vector<int> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = uf.find(i);
    return Clustering::from_labels(std::move(roots));
}

Clustering cluster(const SymMatrix& a, const ClusterConfig& cfg) {
    const int n = a.size();
    if (cfg.K < 1 || cfg.K > n) throw IndexOutOfRange("cluster: K must lie in [1, n]");
    double tau;
    if (cfg.tau) {
        tau = *cfg.tau;
    } else {
        if (!cfg.rho) throw std::invalid_argument("cluster: auto tau requires rho");
        tau = auto_tau(*cfg.rho, n, cfg.xi, cfg.c);
    }
    const EigenSystem e = sym_eigen(a, cfg.eig_tol);
    const SymMatrix m_hat = rank_k_reconstruct(e, cfg.K);
    return threshold_components(m_hat, tau);
}

namespace {

// Overlap counts between the two labelings.
std::vector<std::vector<int>> overlap_matrix(const Clustering& found, const Clustering& truth) {
    std::vector<std::vector<int>> ov(found.num_clusters, std::vector<int>(truth.num_clusters, 0));
    for (std::size_t i = 0; i < found.labels.size(); ++i)
        ++ov[found.labels[i]][truth.labels[i]];
    return ov;
}

int greedy_matched(const std::vector<std::vector<int>>& ov) {
    const int f = static_cast<int>(ov.size());
    const int t = static_cast<int>(ov[0].size());
    std::vector<bool> used_f(f, false), used_t(t, false);
    int matched = 0;
    for (int round = 0; round < std::min(f, t); ++round) {
        int best = -1, bi = -1, bj = -1;
        for (int i = 0; i < f; ++i) {
            if (used_f[i]) continue;
            for (int j = 0; j < t; ++j) {
                if (used_t[j]) continue;
                if (ov[i][j] > best) {
                    best = ov[i][j];
                    bi = i;
                    bj = j;
                }
            }
        }
        if (best <= 0) break;
        used_f[bi] = true;
        used_t[bj] = true;
        matched += best;
    }
    return matched;
}

int exact_matched(const std::vector<std::vector<int>>& ov) {
    const int k = static_cast<int>(ov.size());
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    int best = 0;
    do {
        int s = 0;
        for (int i = 0; i < k; ++i) s += ov[i][perm[i]];
        best = std::max(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace

std::pair<bool, int> recovery_check(const Clustering& found, const Clustering& truth) {
    const int n = static_cast<int>(found.labels.size());
    if (static_cast<int>(truth.labels.size()) != n)
        throw SizeMismatch("recovery_check: clusterings cover different node counts");
    const Clustering cf = Clustering::from_labels(found.labels);
    const Clustering ct = Clustering::from_labels(truth.labels);
    const bool exact = cf.labels == ct.labels;

    const auto ov = overlap_matrix(cf, ct);
    int matched;
    if (cf.num_clusters == ct.num_clusters && cf.num_clusters <= 8)
        matched = exact_matched(ov);
    else
        matched = greedy_matched(ov);
    return {exact, n - matched};
}

std::pair<double, double> matrix_errors(const SymMatrix& m_hat, const SymMatrix& m) {
    if (m_hat.size() != m.size()) throw SizeMismatch("matrix_errors: size mismatch");
    double mx = 0.0, fr = 0.0;
    const int n = m.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double d = m_hat(i, j) - m(i, j);
            mx = std::max(mx, std::abs(d));
            fr += d * d;
        }
    }
    return {mx, std::sqrt(fr)};
}

SymMatrix copy_node_profile(const SymMatrix& m, int dst, int src) {
    const int n = m.size();
    if (dst < 0 || dst >= n || src < 0 || src >= n)
        throw IndexOutOfRange("copy_node_profile: node index out of range");
    SymMatrix out = m;
    for (int c = 0; c < n; ++c)
        if (c != dst) out.set(dst, c, m(src, c));
    out.set(dst, dst, m(src, src));
    return out;
}

} // namespace mpt
