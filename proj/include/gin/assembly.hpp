#pragma once

// Graph assembly sequences: repeatedly applying growth operations to a seed
// graph, either enumerating every non-isomorphic outcome per step or
// sampling a single realization.
//
// Realizations keep edges directed away from the attachment vertex, which
// preserves acyclicity; deduplication uses the undirected shadow, matching
// how the operation result sets are defined.

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "gin/graph.hpp"
#include "gin/iso.hpp"
#include "gin/rng.hpp"

namespace gin {

struct AssemblyOp {
    enum class Kind { add_vertex, add_triangle, custom };

    Kind kind = Kind::add_vertex;
    // Custom ops enumerate every realization for a given graph.
    std::function<std::vector<Dag>(const Dag&)> custom;

    static AssemblyOp add_vertex() { return {Kind::add_vertex, {}}; }
    static AssemblyOp add_triangle() { return {Kind::add_triangle, {}}; }
    static AssemblyOp make_custom(std::function<std::vector<Dag>(const Dag&)> fn) {
        return {Kind::custom, std::move(fn)};
    }
};

namespace detail {

inline std::vector<Dag> assembly_realizations(const Dag& g, const AssemblyOp& op) {
    std::vector<Dag> out;
    switch (op.kind) {
        case AssemblyOp::Kind::add_vertex: {
            const int v_new = g.order();
            for (int s = 0; s < g.order(); ++s) {
                std::vector<Edge> edges(g.edges());
                edges.emplace_back(s, v_new);
                out.emplace_back(g.order() + 1, std::move(edges));
            }
            break;
        }
        case AssemblyOp::Kind::add_triangle: {
            const int v1 = g.order(), v2 = g.order() + 1;
            for (int s = 0; s < g.order(); ++s) {
                std::vector<Edge> edges(g.edges());
                edges.emplace_back(s, v1);
                edges.emplace_back(s, v2);
                edges.emplace_back(v1, v2);
                out.emplace_back(g.order() + 2, std::move(edges));
            }
            break;
        }
        case AssemblyOp::Kind::custom:
            out = op.custom(g);
            break;
    }
    return out;
}

inline bool shadow_isomorphic(const Dag& a, const Dag& b, int iso_limit) {
    return is_isomorphic(undirected_shadow(a), undirected_shadow(b), iso_limit);
}

inline void dedup_by_shadow(std::vector<Dag>& graphs, int iso_limit) {
    std::vector<Dag> unique;
    for (auto& g : graphs) {
        bool seen = false;
        for (auto& u : unique)
            if (u.order() == g.order() && u.size() == g.size() && shadow_isomorphic(u, g, iso_limit)) {
                seen = true;
                break;
            }
        if (!seen) unique.push_back(g);
    }
    graphs = std::move(unique);
}

}  // namespace detail

/// Enumerates all graphs reachable from `init` by applying ops[0], ops[1],
/// ... for `steps` rounds (ops cycling if fewer ops than steps), with
/// results deduplicated up to isomorphism of the undirected shadow.
inline std::vector<Dag> assemble_enumerate(const Dag& init, const std::vector<AssemblyOp>& ops, int steps,
                                           int iso_limit = kDefaultIsoLimit) {
    if (steps < 0) throw std::invalid_argument("assemble_enumerate: negative steps");
    if (ops.empty() && steps > 0) throw std::invalid_argument("assemble_enumerate: no operations");
    std::vector<Dag> frontier{init};
    for (int t = 0; t < steps; ++t) {
        const AssemblyOp& op = ops[t % ops.size()];
        std::vector<Dag> next;
        for (auto& g : frontier) {
            auto rs = detail::assembly_realizations(g, op);
            for (auto& r : rs) {
                if (r.order() > iso_limit)
                    throw std::length_error("assemble_enumerate: order exceeds iso limit");
                next.push_back(std::move(r));
            }
        }
        detail::dedup_by_shadow(next, iso_limit);
        // Sort deterministically by (order, size, canonical key).
        std::sort(next.begin(), next.end(), [](const Dag& a, const Dag& b) {
            if (a.order() != b.order()) return a.order() < b.order();
            if (a.size() != b.size()) return a.size() < b.size();
            return canonical_dag_key(a) < canonical_dag_key(b);
        });
        frontier = std::move(next);
    }
    return frontier;
}

/// Applies one uniformly chosen realization per step.
inline Dag assemble_sample(const Dag& init, const std::vector<AssemblyOp>& ops, int steps, Rng& rng) {
    if (steps < 0) throw std::invalid_argument("assemble_sample: negative steps");
    if (ops.empty() && steps > 0) throw std::invalid_argument("assemble_sample: no operations");
    Dag g = init;
    for (int t = 0; t < steps; ++t) {
        auto rs = detail::assembly_realizations(g, ops[t % ops.size()]);
        if (rs.empty()) throw std::runtime_error("assemble_sample: operation produced no realization");
        g = rs[rng.below(rs.size())];
    }
    return g;
}

}  // namespace gin
