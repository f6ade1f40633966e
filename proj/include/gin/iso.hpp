#pragma once

// Brute-force isomorphism checks for small graphs and a canonical key for
// layered DAGs. Isomorphism maps are searched by backtracking over
// degree-compatible assignments; the configurable order limit guards the
// factorial worst case.

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "gin/graph.hpp"

namespace gin {

inline constexpr int kDefaultIsoLimit = 10;

namespace detail {

struct DirectedView {
    int n;
    std::vector<std::vector<bool>> adj;
    std::vector<int> indeg, outdeg;
    std::vector<std::string> label;

    explicit DirectedView(const Dag& g)
        : n(g.order()),
          adj(g.order(), std::vector<bool>(g.order(), false)),
          indeg(g.in_degrees()),
          outdeg(g.out_degrees()),
          label(g.order()) {
        for (auto [u, v] : g.edges()) adj[u][v] = true;
        for (int v = 0; v < n; ++v) label[v] = g.label_of(v);
    }
};

struct UndirectedView {
    int n;
    std::vector<std::vector<bool>> adj;
    std::vector<int> deg;
    std::vector<std::string> label;

    explicit UndirectedView(const UGraph& g)
        : n(g.order()), adj(g.order(), std::vector<bool>(g.order(), false)), deg(g.degrees()), label(g.order()) {
        for (auto [u, v] : g.edges()) {
            adj[u][v] = true;
            adj[v][u] = true;
        }
    }
};

template <typename View>
bool extend_mapping(const View& a, const View& b, std::vector<int>& map_ab, std::vector<bool>& used, int v) {
    if (v == a.n) return true;
    for (int w = 0; w < b.n; ++w) {
        if (used[w]) continue;
        if (!compatible(a, b, v, w)) continue;
        bool ok = true;
        for (int u = 0; u < v && ok; ++u) {
            if (a.adj[u][v] != b.adj[map_ab[u]][w]) ok = false;
            if (ok && a.adj[v][u] != b.adj[w][map_ab[u]]) ok = false;
        }
        if (!ok) continue;
        map_ab[v] = w;
        used[w] = true;
        if (extend_mapping(a, b, map_ab, used, v + 1)) return true;
        used[w] = false;
    }
    return false;
}

inline bool compatible(const DirectedView& a, const DirectedView& b, int v, int w) {
    return a.indeg[v] == b.indeg[w] && a.outdeg[v] == b.outdeg[w] && a.label[v] == b.label[w];
}

inline bool compatible(const UndirectedView& a, const UndirectedView& b, int v, int w) {
    return a.deg[v] == b.deg[w] && a.label[v] == b.label[w];
}

template <typename View>
bool iso_search(const View& a, const View& b) {
    if (a.n != b.n) return false;
    {
        auto da = a.label;
        auto db = b.label;
        std::sort(da.begin(), da.end());
        std::sort(db.begin(), db.end());
        if (da != db) return false;
    }
    std::vector<int> map_ab(a.n, -1);
    std::vector<bool> used(a.n, false);
    return extend_mapping(a, b, map_ab, used, 0);
}

}  // namespace detail

/// Edge- and label-preserving bijection test for small DAGs.
inline bool is_isomorphic(const Dag& g1, const Dag& g2, int max_order = kDefaultIsoLimit) {
    if (g1.order() > max_order || g2.order() > max_order)
        throw std::length_error("is_isomorphic: order exceeds the brute-force limit");
    if (g1.order() != g2.order() || g1.size() != g2.size()) return false;
    detail::DirectedView a(g1), b(g2);
    return detail::iso_search(a, b);
}

inline bool is_isomorphic(const UGraph& g1, const UGraph& g2, int max_order = kDefaultIsoLimit) {
    if (g1.order() > max_order || g2.order() > max_order)
        throw std::length_error("is_isomorphic: order exceeds the brute-force limit");
    if (g1.order() != g2.order() || g1.size() != g2.size()) return false;
    detail::UndirectedView a(g1), b(g2);
    return detail::iso_search(a, b);
}

/// Canonical serialization of an unlabeled DAG: the lexicographically
/// minimal row-major adjacency bit string over all layer-respecting vertex
/// orders. Any isomorphism preserves the longest-path layering, so equal
/// keys are equivalent to directed isomorphism.
inline std::string canonical_dag_key(const Dag& g) {
    const int n = g.order();
    const Layering lay = layering(g);
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (auto [u, v] : g.edges()) adj[u][v] = true;

    // position[v] under the current per-layer permutations
    std::vector<std::vector<int>> layer_perm;
    layer_perm.reserve(lay.layers.size());
    for (auto& layer : lay.layers) layer_perm.push_back(layer);

    std::string best;
    std::string cur(static_cast<std::size_t>(n) * n, '0');
    std::vector<int> pos(n, 0);

    auto evaluate = [&]() {
        int p = 0;
        for (auto& layer : layer_perm)
            for (int v : layer) pos[v] = p++;
        std::fill(cur.begin(), cur.end(), '0');
        for (auto [u, v] : g.edges()) cur[static_cast<std::size_t>(pos[u]) * n + pos[v]] = '1';
        if (best.empty() || cur < best) best = cur;
    };

    // Odometer over per-layer permutations.
    for (auto& lp : layer_perm) std::sort(lp.begin(), lp.end());
    evaluate();
    for (;;) {
        std::size_t k = 0;
        while (k < layer_perm.size() && !std::next_permutation(layer_perm[k].begin(), layer_perm[k].end())) {
            std::sort(layer_perm[k].begin(), layer_perm[k].end());
            ++k;
        }
        if (k == layer_perm.size()) break;
        evaluate();
    }
    return best;
}

/// Cheap isomorphism-invariant fingerprint used to bucket graphs before
/// pairwise checks.
inline std::string iso_fingerprint(const Dag& g) {
    auto in = g.in_degrees();
    auto out = g.out_degrees();
    std::vector<std::pair<int, int>> degs(g.order());
    for (int v = 0; v < g.order(); ++v) degs[v] = {in[v], out[v]};
    std::sort(degs.begin(), degs.end());
    const Layering lay = layering(g);
    std::vector<int> sizes;
    for (auto& l : lay.layers) sizes.push_back(static_cast<int>(l.size()));
    std::string fp = std::to_string(g.order()) + "|" + std::to_string(g.size()) + "|";
    for (auto [i, o] : degs) fp += std::to_string(i) + "," + std::to_string(o) + ";";
    fp += "|";
    for (int s : sizes) fp += std::to_string(s) + ";";
    return fp;
}

}  // namespace gin
