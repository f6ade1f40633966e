#pragma once

// Random graph models and exact uniform DAG sampling.
//
// The uniform sampler follows Kuipers & Moffa's outpoint decomposition: a
// labeled DAG decomposes uniquely into layers V_1, V_2, ... where V_1 are
// the sources and V_{i+1} are the vertices that become sources once V_i is
// removed. Counting with
//   b(n,k) = sum_s (2^k-1)^s * 2^{k(n-k-s)} * a(n-k,s),   a(n,k) = C(n,k) b(n,k)
// lets us draw the layer-size profile with exact probabilities (fresh
// uniform big-integer rank per level), fill the canonical adjacency matrix
// (each new-layer vertex draws a non-empty in-set from the previous layer,
// arbitrary in-sets from older layers), and finally apply a uniform vertex
// permutation.

#include <map>
#include <stdexcept>
#include <vector>

#include "gin/bigint.hpp"
#include "gin/graph.hpp"
#include "gin/rng.hpp"

namespace gin {

inline constexpr int kMaxDagOrder = 60;

/// Exact count of labeled DAGs on n vertices (Robinson's recurrence,
/// alternating inclusion-exclusion over source sets).
inline BigUint count_dags(int n) {
    if (n < 0 || n > kMaxDagOrder) throw std::length_error("count_dags: n out of supported range");
    std::vector<BigUint> a(static_cast<std::size_t>(n) + 1);
    a[0] = BigUint::one();
    // Pascal triangle for binomials up to n.
    std::vector<std::vector<BigUint>> binom(n + 1);
    for (int i = 0; i <= n; ++i) {
        binom[i].resize(i + 1);
        binom[i][0] = BigUint::one();
        binom[i][i] = BigUint::one();
        for (int k = 1; k < i; ++k) binom[i][k] = binom[i - 1][k - 1] + binom[i - 1][k];
    }
    for (int m = 1; m <= n; ++m) {
        BigUint pos, neg;
        for (int k = 1; k <= m; ++k) {
            BigUint term = binom[m][k] * BigUint::pow2(static_cast<unsigned>(k * (m - k))) * a[m - k];
            if (k % 2 == 1)
                pos += term;
            else
                neg += term;
        }
        a[m] = pos - neg;
    }
    return a[n];
}

/// Memoized outpoint-decomposition counts used by the uniform sampler.
class DagCombinatorics {
public:
    explicit DagCombinatorics(int max_n = kMaxDagOrder) : max_n_(max_n) {
        if (max_n < 1 || max_n > kMaxDagOrder)
            throw std::length_error("DagCombinatorics: max_n out of supported range");
        binom_.resize(max_n + 1);
        for (int i = 0; i <= max_n; ++i) {
            binom_[i].resize(i + 1);
            binom_[i][0] = BigUint::one();
            binom_[i][i] = BigUint::one();
            for (int k = 1; k < i; ++k) binom_[i][k] = binom_[i - 1][k - 1] + binom_[i - 1][k];
        }
        a_nk_.assign(max_n + 1, {});
        b_nk_.assign(max_n + 1, {});
        a_n_.assign(max_n + 1, BigUint());
        for (int n = 1; n <= max_n; ++n) {
            a_nk_[n].assign(n + 1, BigUint());
            b_nk_[n].assign(n + 1, BigUint());
            for (int k = 1; k <= n; ++k) {
                if (k == n) {
                    b_nk_[n][k] = BigUint::one();
                } else {
                    BigUint total;
                    const int m = n - k;
                    const BigUint base = BigUint::pow2(static_cast<unsigned>(k)) - BigUint::one();
                    for (int s = 1; s <= m; ++s) {
                        total += BigUint::pow(base, static_cast<unsigned>(s)) *
                                 BigUint::pow2(static_cast<unsigned>(k * (m - s))) * a_nk_[m][s];
                    }
                    b_nk_[n][k] = total;
                }
                a_nk_[n][k] = binom_[n][k] * b_nk_[n][k];
                a_n_[n] += a_nk_[n][k];
            }
        }
    }

    int max_n() const { return max_n_; }
    const BigUint& a_n(int n) const { return a_n_.at(n); }
    const BigUint& a_nk(int n, int k) const { return a_nk_.at(n).at(k); }
    const BigUint& b_nk(int n, int k) const { return b_nk_.at(n).at(k); }
    const BigUint& binom(int n, int k) const { return binom_.at(n).at(k); }

private:
    int max_n_;
    std::vector<std::vector<BigUint>> binom_;
    std::vector<std::vector<BigUint>> a_nk_;
    std::vector<std::vector<BigUint>> b_nk_;
    std::vector<BigUint> a_n_;
};

namespace detail {

inline BigUint uniform_rank(Rng& rng, const BigUint& upper_inclusive) {
    // Uniform in [1, upper].
    return upper_inclusive.sample_below(rng) + BigUint::one();
}

/// Draws the outpoint layer-size profile (k_1, k_2, ...) with probability
/// proportional to the number of labeled DAGs carrying it.
inline std::vector<int> sample_outpoint_profile(int n, const DagCombinatorics& combs, Rng& rng) {
    std::vector<int> ks;
    BigUint r = uniform_rank(rng, combs.a_n(n));
    int k = 1;
    while (r > combs.a_nk(n, k)) {
        r -= combs.a_nk(n, k);
        ++k;
    }
    ks.push_back(k);
    int m = n - k;
    while (m > 0) {
        // P(s) = (2^k-1)^s * 2^{k(m-s)} * a(m,s) / b(n,k); a fresh rank per
        // level keeps the distribution exact without big-integer division.
        const BigUint base = BigUint::pow2(static_cast<unsigned>(k)) - BigUint::one();
        BigUint rr = uniform_rank(rng, combs.b_nk(m + k, k));
        int s = 1;
        for (;;) {
            BigUint t = BigUint::pow(base, static_cast<unsigned>(s)) *
                        BigUint::pow2(static_cast<unsigned>(k * (m - s))) * combs.a_nk(m, s);
            if (rr <= t) break;
            rr -= t;
            ++s;
        }
        ks.push_back(s);
        k = s;
        m -= s;
    }
    return ks;
}

}  // namespace detail

/// Uniform draw over all labeled DAGs on n vertices (possibly disconnected).
/// Reusing a DagCombinatorics instance avoids recomputing the count tables.
inline Dag sample_uniform_dag(int n, Rng& rng, const DagCombinatorics* combs = nullptr) {
    if (n < 1 || n > kMaxDagOrder) throw std::length_error("sample_uniform_dag: n out of supported range");
    DagCombinatorics local_combs(combs ? 1 : n);
    const DagCombinatorics& c = combs ? *combs : local_combs;
    if (c.max_n() < n) throw std::length_error("sample_uniform_dag: combinatorics table too small");

    const std::vector<int> ks = detail::sample_outpoint_profile(n, c, rng);

    // Canonical layout: group i occupies a contiguous id range, sources first.
    std::vector<int> group_start(ks.size() + 1, 0);
    for (std::size_t i = 0; i < ks.size(); ++i) group_start[i + 1] = group_start[i] + ks[i];

    std::vector<Edge> canonical_edges;
    for (std::size_t j = 1; j < ks.size(); ++j) {
        for (int v = group_start[j]; v < group_start[j + 1]; ++v) {
            // Non-empty in-set from the immediately preceding group.
            const int prev_lo = group_start[j - 1];
            const int prev_hi = group_start[j];
            bool any;
            std::vector<int> chosen;
            do {
                any = false;
                chosen.clear();
                for (int u = prev_lo; u < prev_hi; ++u)
                    if (rng.bernoulli(0.5)) {
                        chosen.push_back(u);
                        any = true;
                    }
            } while (!any);
            for (int u : chosen) canonical_edges.emplace_back(u, v);
            // Arbitrary in-sets from all older groups.
            for (int u = 0; u < prev_lo; ++u)
                if (rng.bernoulli(0.5)) canonical_edges.emplace_back(u, v);
        }
    }

    // Uniform relabeling.
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);
    std::vector<Edge> edges;
    edges.reserve(canonical_edges.size());
    for (auto [u, v] : canonical_edges) edges.emplace_back(perm[u], perm[v]);
    return Dag(n, std::move(edges));
}

/// Rejection wrapper: uniform over weakly connected labeled DAGs.
inline Dag sample_uniform_connected_dag(int n, Rng& rng, int max_trials = 20,
                                        const DagCombinatorics* combs = nullptr) {
    if (max_trials < 1) throw std::invalid_argument("sample_uniform_connected_dag: max_trials must be >= 1");
    DagCombinatorics local_combs(combs ? 1 : n);
    const DagCombinatorics& c = combs ? *combs : local_combs;
    for (int trial = 0; trial < max_trials; ++trial) {
        Dag g = sample_uniform_dag(n, rng, &c);
        if (weakly_connected(g)) return g;
    }
    throw std::runtime_error("sample_uniform_connected_dag: retries exhausted");
}

/// GIL(n, p): every one of the C(n,2) edges independently with probability p.
inline UGraph sample_gil(int n, double p, Rng& rng) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_gil: p must be in [0, 1]");
    if (n < 0) throw std::invalid_argument("sample_gil: negative order");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) edges.emplace_back(u, v);
    return UGraph(n, std::move(edges));
}

/// ER(n, m): uniform over all graphs with exactly m edges.
inline UGraph sample_er(int n, int m, Rng& rng) {
    const long long pool = static_cast<long long>(n) * (n - 1) / 2;
    if (m < 0 || m > pool) throw std::invalid_argument("sample_er: m out of range");
    std::vector<Edge> all;
    all.reserve(pool);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
    // Partial Fisher-Yates: first m entries become the sample.
    for (int i = 0; i < m; ++i) {
        const std::size_t j = i + rng.below(all.size() - i);
        std::swap(all[i], all[j]);
    }
    all.resize(m);
    return UGraph(n, std::move(all));
}

/// WS(n; k; p): ring lattice with k/2 neighbors per side, then each lattice
/// edge (u, u+j) is independently rewired with probability p to (u, v') with
/// v' drawn uniformly outside {u} and u's current neighborhood.
inline UGraph sample_ws(int n, int k, double p, Rng& rng) {
    if (k < 0 || k % 2 != 0) throw std::invalid_argument("sample_ws: k must be even and non-negative");
    if (k >= n) throw std::invalid_argument("sample_ws: k must be < n");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_ws: p must be in [0, 1]");
    std::vector<std::set<int>> adj(n);
    auto add = [&](int a, int b) {
        adj[a].insert(b);
        adj[b].insert(a);
    };
    auto remove = [&](int a, int b) {
        adj[a].erase(b);
        adj[b].erase(a);
    };
    for (int j = 1; j <= k / 2; ++j)
        for (int u = 0; u < n; ++u) add(u, (u + j) % n);
    for (int j = 1; j <= k / 2; ++j) {
        for (int u = 0; u < n; ++u) {
            const int v = (u + j) % n;
            if (!rng.bernoulli(p)) continue;
            if (!adj[u].count(v)) continue;  // already rewired away
            if (static_cast<int>(adj[u].size()) >= n - 1) continue;  // no legal target
            int target;
            do {
                target = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            } while (target == u || adj[u].count(target));
            remove(u, v);
            add(u, target);
        }
    }
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v : adj[u])
            if (u < v) edges.emplace_back(u, v);
    return UGraph(n, std::move(edges));
}

/// BA(n, m): star on m+1 vertices, then growth with degree-proportional
/// attachment of m distinct targets per new vertex. Final size is m(n-m).
inline UGraph sample_ba(int n, int m, Rng& rng) {
    if (m < 1 || m >= n) throw std::invalid_argument("sample_ba: need 1 <= m < n");
    std::vector<Edge> edges;
    std::vector<int> repeated;  // vertex v appears deg(v) times
    for (int leaf = 1; leaf <= m; ++leaf) {
        edges.emplace_back(0, leaf);
        repeated.push_back(0);
        repeated.push_back(leaf);
    }
    for (int v = m + 1; v < n; ++v) {
        std::set<int> targets;
        while (static_cast<int>(targets.size()) < m)
            targets.insert(repeated[rng.below(repeated.size())]);
        for (int t : targets) {
            edges.emplace_back(t, v);
            repeated.push_back(t);
            repeated.push_back(v);
        }
    }
    return UGraph(n, std::move(edges));
}

/// Orients every undirected edge from the lower to the higher rank under
/// perm; the result is acyclic by construction.
inline Dag orient_to_dag(const UGraph& g, const std::vector<int>& perm) {
    const int n = g.order();
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("orient_to_dag: permutation size mismatch");
    std::vector<bool> seen(n, false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[p]) throw std::invalid_argument("orient_to_dag: not a permutation");
        seen[p] = true;
    }
    std::vector<Edge> edges;
    edges.reserve(g.size());
    for (auto [u, v] : g.edges()) {
        if (perm[u] < perm[v])
            edges.emplace_back(u, v);
        else
            edges.emplace_back(v, u);
    }
    return Dag(n, std::move(edges));
}

}  // namespace gin
