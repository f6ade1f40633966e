#pragma once

// Computational themes: connected single-source single-sink DAGs whose
// vertices all have pairwise distinct (in, out) neighborhoods. Provides the
// membership check with violation witnesses, the vertex-collapse
// canonicalization, and exhaustive enumeration for small orders.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gin/graph.hpp"
#include "gin/iso.hpp"

namespace gin {

struct ThemeViolation {
    enum class Cond { inner_nonempty, inner_degrees, distinct_neighborhoods, connectivity, root_sink };
    Cond cond;
    int vertex_a = -1;
    int vertex_b = -1;
};

struct ThemeReport {
    bool is_theme = false;
    std::vector<ThemeViolation> violations;
};

inline ThemeReport is_computational_theme(const Dag& g) {
    ThemeReport rep;
    auto add = [&](ThemeViolation::Cond c, int a = -1, int b = -1) {
        rep.violations.push_back({c, a, b});
    };

    if (!weakly_connected(g)) add(ThemeViolation::Cond::connectivity);

    const auto sources = g.sources();
    const auto sinks = g.sinks();
    if (sources.size() != 1) {
        for (std::size_t i = 1; i < sources.size(); ++i)
            add(ThemeViolation::Cond::root_sink, sources[i]);
        if (sources.empty()) add(ThemeViolation::Cond::root_sink);
    }
    if (sinks.size() != 1) {
        for (std::size_t i = 1; i < sinks.size(); ++i)
            add(ThemeViolation::Cond::root_sink, sinks[i]);
        if (sinks.empty()) add(ThemeViolation::Cond::root_sink);
    }
    const int root = sources.size() == 1 ? sources[0] : -1;
    const int sink = sinks.size() == 1 ? sinks[0] : -1;

    // (1) at least one inner vertex
    int inner = 0;
    for (int v = 0; v < g.order(); ++v)
        if (v != root && v != sink) ++inner;
    if (inner == 0) add(ThemeViolation::Cond::inner_nonempty);

    // (2) inner vertices have non-empty in- and out-neighborhoods
    auto indeg = g.in_degrees();
    auto outdeg = g.out_degrees();
    for (int v = 0; v < g.order(); ++v) {
        if (v == root || v == sink) continue;
        if (indeg[v] == 0 || outdeg[v] == 0) add(ThemeViolation::Cond::inner_degrees, v);
    }

    // (3) pairwise distinct (in, out) neighborhoods
    auto in_adj = g.in_adj();
    auto out_adj = g.out_adj();
    for (auto& a : in_adj) std::sort(a.begin(), a.end());
    for (auto& a : out_adj) std::sort(a.begin(), a.end());
    for (int v1 = 0; v1 < g.order(); ++v1)
        for (int v2 = v1 + 1; v2 < g.order(); ++v2)
            if (in_adj[v1] == in_adj[v2] && out_adj[v1] == out_adj[v2])
                add(ThemeViolation::Cond::distinct_neighborhoods, v1, v2);

    rep.is_theme = rep.violations.empty();
    return rep;
}

/// Merges every class of vertices sharing identical (in, out) neighborhoods
/// and repeats until no such class remains. Labels are dropped; the result
/// has dense ids ordered by the surviving representatives' old ids.
inline Dag collapse(const Dag& g) {
    std::vector<Edge> edges(g.edges());
    int order = g.order();
    std::vector<int> ids(order);
    for (int i = 0; i < order; ++i) ids[i] = i;

    for (;;) {
        std::vector<std::set<int>> in(order), out(order);
        for (auto [u, v] : edges) {
            out[u].insert(v);
            in[v].insert(u);
        }
        // Group vertices by neighborhood signature; representative = min id.
        std::map<std::pair<std::vector<int>, std::vector<int>>, int> rep;
        std::vector<int> merge_into(order);
        bool merged = false;
        for (int v = 0; v < order; ++v) {
            std::pair<std::vector<int>, std::vector<int>> sig{{in[v].begin(), in[v].end()},
                                                              {out[v].begin(), out[v].end()}};
            auto [it, inserted] = rep.try_emplace(std::move(sig), v);
            merge_into[v] = it->second;
            if (!inserted) merged = true;
        }
        if (!merged) break;
        // Relabel to dense ids over the representatives.
        std::vector<int> new_id(order, -1);
        int next = 0;
        for (int v = 0; v < order; ++v)
            if (merge_into[v] == v) new_id[v] = next++;
        std::set<Edge> new_edges;
        for (auto [u, v] : edges) {
            int a = new_id[merge_into[u]];
            int b = new_id[merge_into[v]];
            if (a != b) new_edges.insert({a, b});
        }
        edges.assign(new_edges.begin(), new_edges.end());
        order = next;
    }
    return Dag(order, std::move(edges));
}

/// Operational membership test for the equivalence class of theme T.
inline bool in_theme(const Dag& g, const Dag& theme, int iso_limit = kDefaultIsoLimit) {
    return is_isomorphic(collapse(g), theme, iso_limit);
}

/// Exhaustively enumerates the computational themes of a given order by
/// iterating all edge subsets of the complete DAG under the identity
/// topological orientation and canonicalizing. Results are sorted by
/// canonical serialization.
inline std::vector<Dag> enumerate_cts(int order, bool iso_dedup = true) {
    if (order < 3 || order > 7) throw std::length_error("enumerate_cts: order must be in [3, 7]");
    std::vector<Edge> slots;
    for (int u = 0; u < order; ++u)
        for (int v = u + 1; v < order; ++v) slots.emplace_back(u, v);
    const std::size_t n_slots = slots.size();

    std::vector<std::pair<std::string, Dag>> keyed;
    std::set<std::string> seen;
    for (std::uint64_t mask = 0; mask < (1ULL << n_slots); ++mask) {
        std::vector<Edge> edges;
        for (std::size_t b = 0; b < n_slots; ++b)
            if (mask & (1ULL << b)) edges.push_back(slots[b]);
        if (edges.size() < static_cast<std::size_t>(order) - 1) continue;  // cannot be connected
        Dag g(order, std::move(edges));
        if (!is_computational_theme(g).is_theme) continue;
        std::string key = canonical_dag_key(g);
        if (iso_dedup) {
            if (!seen.insert(key).second) continue;
        }
        keyed.emplace_back(std::move(key), std::move(g));
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Dag> out;
    out.reserve(keyed.size());
    for (auto& [k, g] : keyed) out.push_back(std::move(g));
    return out;
}

}  // namespace gin
