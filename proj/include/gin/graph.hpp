#pragma once

// Directed acyclic graphs and undirected graphs over dense integer vertex
// ids 0..n-1, plus the structural operations everything else builds on:
// layering, topological sort, densities, path lengths, adjacency matrices
// and the concatenation/parallelisation composition operators.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gin {

using Edge = std::pair<int, int>;

class Dag {
public:
    Dag() = default;

    Dag(int order, std::vector<Edge> edges, std::map<int, std::string> labels = {})
        : order_(order), edges_(std::move(edges)), labels_(std::move(labels)) {
        normalize_and_validate();
    }

    int order() const { return order_; }
    int size() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::map<int, std::string>& labels() const { return labels_; }
    bool labeled() const { return !labels_.empty(); }

    std::string label_of(int v) const {
        auto it = labels_.find(v);
        return it == labels_.end() ? std::string() : it->second;
    }

    bool has_edge(int u, int v) const {
        return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
    }

    std::vector<std::vector<int>> out_adj() const {
        std::vector<std::vector<int>> adj(order_);
        for (auto [u, v] : edges_) adj[u].push_back(v);
        return adj;
    }

    std::vector<std::vector<int>> in_adj() const {
        std::vector<std::vector<int>> adj(order_);
        for (auto [u, v] : edges_) adj[v].push_back(u);
        return adj;
    }

    std::vector<int> in_degrees() const {
        std::vector<int> d(order_, 0);
        for (auto [u, v] : edges_) ++d[v];
        return d;
    }

    std::vector<int> out_degrees() const {
        std::vector<int> d(order_, 0);
        for (auto [u, v] : edges_) ++d[u];
        return d;
    }

    std::vector<int> sources() const {
        auto d = in_degrees();
        std::vector<int> s;
        for (int v = 0; v < order_; ++v)
            if (d[v] == 0) s.push_back(v);
        return s;
    }

    std::vector<int> sinks() const {
        auto d = out_degrees();
        std::vector<int> s;
        for (int v = 0; v < order_; ++v)
            if (d[v] == 0) s.push_back(v);
        return s;
    }

private:
    void normalize_and_validate() {
        if (order_ < 0) throw std::invalid_argument("Dag: negative order");
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
        for (auto [u, v] : edges_) {
            if (u == v) throw std::invalid_argument("Dag: self-loop");
            if (u < 0 || v < 0 || u >= order_ || v >= order_)
                throw std::invalid_argument("Dag: edge endpoint out of range");
        }
        for (auto& [v, lab] : labels_) {
            (void)lab;
            if (v < 0 || v >= order_) throw std::invalid_argument("Dag: label vertex out of range");
        }
        // Kahn pass proves acyclicity.
        auto indeg = in_degrees();
        auto adj = out_adj();
        std::deque<int> ready;
        for (int v = 0; v < order_; ++v)
            if (indeg[v] == 0) ready.push_back(v);
        int seen = 0;
        while (!ready.empty()) {
            int v = ready.front();
            ready.pop_front();
            ++seen;
            for (int w : adj[v])
                if (--indeg[w] == 0) ready.push_back(w);
        }
        if (seen != order_) throw std::invalid_argument("Dag: edge relation contains a cycle");
    }

    int order_ = 0;
    std::vector<Edge> edges_;
    std::map<int, std::string> labels_;
};

class UGraph {
public:
    UGraph() = default;

    UGraph(int order, std::vector<Edge> edges) : order_(order), edges_(std::move(edges)) {
        if (order_ < 0) throw std::invalid_argument("UGraph: negative order");
        for (auto& e : edges_) {
            if (e.first == e.second) throw std::invalid_argument("UGraph: self-loop");
            if (e.first > e.second) std::swap(e.first, e.second);
            if (e.first < 0 || e.second >= order_)
                throw std::invalid_argument("UGraph: edge endpoint out of range");
        }
        std::sort(edges_.begin(), edges_.end());
        edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    }

    int order() const { return order_; }
    int size() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_edge(int u, int v) const {
        if (u > v) std::swap(u, v);
        return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
    }

    std::vector<std::vector<int>> adj() const {
        std::vector<std::vector<int>> a(order_);
        for (auto [u, v] : edges_) {
            a[u].push_back(v);
            a[v].push_back(u);
        }
        return a;
    }

    std::vector<int> degrees() const {
        std::vector<int> d(order_, 0);
        for (auto [u, v] : edges_) {
            ++d[u];
            ++d[v];
        }
        return d;
    }

private:
    int order_ = 0;
    std::vector<Edge> edges_;
};

/// Undirected shadow of a DAG: same vertices, edges with direction dropped.
inline UGraph undirected_shadow(const Dag& g) {
    std::vector<Edge> e(g.edges());
    return UGraph(g.order(), std::move(e));
}

struct Layering {
    std::vector<int> layer_of;           // vertex -> layer index
    std::vector<std::vector<int>> layers;  // layer -> ascending vertex list
    int depth = 0;                       // max layer index
};

/// Longest-path layering: sources sit at layer 0, every edge goes to a
/// strictly larger layer.
inline Layering layering(const Dag& g) {
    Layering lay;
    lay.layer_of.assign(g.order(), 0);
    auto indeg = g.in_degrees();
    auto adj = g.out_adj();
    std::deque<int> ready;
    for (int v = 0; v < g.order(); ++v)
        if (indeg[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
        int v = ready.front();
        ready.pop_front();
        for (int w : adj[v]) {
            lay.layer_of[w] = std::max(lay.layer_of[w], lay.layer_of[v] + 1);
            if (--indeg[w] == 0) ready.push_back(w);
        }
    }
    lay.depth = 0;
    for (int v = 0; v < g.order(); ++v) lay.depth = std::max(lay.depth, lay.layer_of[v]);
    lay.layers.assign(g.order() == 0 ? 0 : lay.depth + 1, {});
    for (int v = 0; v < g.order(); ++v) lay.layers[lay.layer_of[v]].push_back(v);
    return lay;
}

/// Kahn's algorithm with an ascending-id tie break, so the result is the
/// unique lexicographically smallest topological order.
inline std::vector<int> topological_sort(const Dag& g) {
    auto indeg = g.in_degrees();
    auto adj = g.out_adj();
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int v = 0; v < g.order(); ++v)
        if (indeg[v] == 0) ready.push(v);
    std::vector<int> order;
    order.reserve(g.order());
    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (int w : adj[v])
            if (--indeg[w] == 0) ready.push(w);
    }
    return order;
}

inline double density(const Dag& g) {
    if (g.order() < 2) throw std::domain_error("density: order must be >= 2");
    const double n = g.order();
    return static_cast<double>(g.size()) / (n * (n - 1.0));
}

inline double density(const UGraph& g) {
    if (g.order() < 2) throw std::domain_error("density: order must be >= 2");
    const double n = g.order();
    return 2.0 * static_cast<double>(g.size()) / (n * (n - 1.0));
}

/// Single-source shortest hops; unreachable vertices get -1.
inline std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int src) {
    std::vector<int> dist(adj.size(), -1);
    std::deque<int> q{src};
    dist[src] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : adj[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
    }
    return dist;
}

namespace detail {
inline double avg_path_length_impl(const std::vector<std::vector<int>>& adj, int n) {
    if (n < 2) throw std::domain_error("avg_path_length: order must be >= 2");
    double total = 0.0;
    for (int s = 0; s < n; ++s) {
        auto d = bfs_distances(adj, s);
        for (int t = 0; t < n; ++t)
            if (t != s && d[t] > 0) total += d[t];
    }
    return total / (static_cast<double>(n) * (n - 1.0));
}
}  // namespace detail

/// Characteristic path length with the d^0 convention: unreachable ordered
/// pairs contribute 0 while the denominator stays n(n-1).
inline double avg_path_length(const Dag& g) {
    return detail::avg_path_length_impl(g.out_adj(), g.order());
}

inline double avg_path_length(const UGraph& g) {
    return detail::avg_path_length_impl(g.adj(), g.order());
}

/// Entry (i,j) = 1 iff (perm^-1(i), perm^-1(j)) is an edge, i.e. vertex v
/// occupies row/column perm[v].
inline std::vector<std::vector<int>> adjacency_matrix(const Dag& g, const std::vector<int>& perm) {
    const int n = g.order();
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("adjacency_matrix: permutation size mismatch");
    std::vector<bool> seen(n, false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[p]) throw std::invalid_argument("adjacency_matrix: not a permutation");
        seen[p] = true;
    }
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (auto [u, v] : g.edges()) m[perm[u]][perm[v]] = 1;
    return m;
}

inline std::vector<int> identity_permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

/// Weakly connected component ids (shared for Dag shadows and UGraphs).
inline std::vector<int> component_ids(const std::vector<std::vector<int>>& adj) {
    std::vector<int> comp(adj.size(), -1);
    int next = 0;
    for (std::size_t s = 0; s < adj.size(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = next;
        std::deque<int> q{static_cast<int>(s)};
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int w : adj[v])
                if (comp[w] < 0) {
                    comp[w] = next;
                    q.push_back(w);
                }
        }
        ++next;
    }
    return comp;
}

inline int component_count(const UGraph& g) {
    auto ids = component_ids(g.adj());
    return ids.empty() ? 0 : 1 + *std::max_element(ids.begin(), ids.end());
}

inline bool weakly_connected(const Dag& g) {
    if (g.order() <= 1) return true;
    return component_count(undirected_shadow(g)) == 1;
}

/// g2 then g1: g2 keeps its ids, g1 is shifted by |g2|, and every sink of
/// g2 is wired to every source of g1.
inline Dag concatenate(const Dag& g1, const Dag& g2) {
    const int shift = g2.order();
    std::vector<Edge> edges(g2.edges());
    for (auto [u, v] : g1.edges()) edges.emplace_back(u + shift, v + shift);
    for (int snk : g2.sinks())
        for (int src : g1.sources()) edges.emplace_back(snk, src + shift);
    std::map<int, std::string> labels(g2.labels());
    for (auto& [v, lab] : g1.labels()) labels[v + shift] = lab;
    return Dag(g1.order() + g2.order(), std::move(edges), std::move(labels));
}

/// Disjoint union; no bridging edges.
inline Dag parallelize(const Dag& g1, const Dag& g2) {
    const int shift = g1.order();
    std::vector<Edge> edges(g1.edges());
    for (auto [u, v] : g2.edges()) edges.emplace_back(u + shift, v + shift);
    std::map<int, std::string> labels(g1.labels());
    for (auto& [v, lab] : g2.labels()) labels[v + shift] = lab;
    return Dag(g1.order() + g2.order(), std::move(edges), std::move(labels));
}

}  // namespace gin
