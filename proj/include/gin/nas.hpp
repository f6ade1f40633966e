#pragma once

// Labeled search-space constraints, the four unary graph variation
// operators, constraint-respecting retry wrappers, elitist evolutionary
// search, and the operator delta study.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gin/generators.hpp"
#include "gin/graph.hpp"
#include "gin/graph_metrics.hpp"
#include "gin/rng.hpp"

namespace gin {

struct SpaceConstraints {
    int max_vertices = 7;
    int max_edges = 9;
    std::vector<std::string> label_alphabet = {"CONV_1X1", "CONV_3X3", "MAXPOOL_3X3"};
    std::string input_label = "INPUT";
    std::string output_label = "OUTPUT";
    bool require_labels = true;  // off for unlabeled structural searches

    bool valid(const Dag& g) const {
        if (g.order() < 2 || g.order() > max_vertices) return false;
        if (g.size() > max_edges) return false;
        if (!weakly_connected(g)) return false;
        const auto sources = g.sources();
        const auto sinks = g.sinks();
        if (sources.size() != 1 || sinks.size() != 1) return false;
        if (!require_labels) return true;
        for (int v = 0; v < g.order(); ++v) {
            const std::string lab = g.label_of(v);
            if (v == sources[0]) {
                if (lab != input_label) return false;
            } else if (v == sinks[0]) {
                if (lab != output_label) return false;
            } else if (std::find(label_alphabet.begin(), label_alphabet.end(), lab) ==
                       label_alphabet.end()) {
                return false;
            }
        }
        return true;
    }
};

struct OpInapplicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Re-establishes the io labeling convention after an operator touched the
/// source or sink: the unique source gets the input label, the unique sink
/// the output label, and any other vertex holding an io label is redrawn
/// from the alphabet.
inline Dag fix_io_labels(const Dag& g, const SpaceConstraints& c, Rng& rng) {
    if (!c.require_labels) return g;
    const auto sources = g.sources();
    const auto sinks = g.sinks();
    std::map<int, std::string> labels = g.labels();
    auto random_label = [&]() { return c.label_alphabet[rng.below(c.label_alphabet.size())]; };
    for (int v = 0; v < g.order(); ++v) {
        const bool is_src = sources.size() == 1 && v == sources[0];
        const bool is_snk = sinks.size() == 1 && v == sinks[0];
        std::string& lab = labels[v];
        if (is_src)
            lab = c.input_label;
        else if (is_snk)
            lab = c.output_label;
        else if (lab == c.input_label || lab == c.output_label || lab.empty())
            lab = random_label();
    }
    return Dag(g.order(), g.edges(), std::move(labels));
}

}  // namespace detail

/// Uniformly relabels one inner vertex with a uniformly drawn alphabet
/// label; order, size and io labels are untouched.
inline Dag relabel(const Dag& g, const SpaceConstraints& c, Rng& rng) {
    const auto sources = g.sources();
    const auto sinks = g.sinks();
    std::vector<int> inner;
    for (int v = 0; v < g.order(); ++v) {
        const bool io = (sources.size() == 1 && v == sources[0]) || (sinks.size() == 1 && v == sinks[0]);
        if (!io) inner.push_back(v);
    }
    if (inner.empty()) throw OpInapplicable("relabel: no inner vertex");
    const int v = inner[rng.below(inner.size())];
    std::map<int, std::string> labels = g.labels();
    labels[v] = c.label_alphabet[rng.below(c.label_alphabet.size())];
    return detail::fix_io_labels(Dag(g.order(), g.edges(), std::move(labels)), c, rng);
}

/// Moves one outgoing edge of a random vertex to a non-existing target.
/// Acyclicity is preserved by restricting new targets to vertices that come
/// strictly later in the fixed (id-tiebroken) topological order; the
/// replaced edge is one uniformly chosen existing out-edge. Vertex choice
/// retries up to |V| times.
inline Dag rewire(const Dag& g, const SpaceConstraints& c, Rng& rng) {
    const auto topo = topological_sort(g);
    std::vector<int> topo_pos(g.order());
    for (int p = 0; p < g.order(); ++p) topo_pos[topo[p]] = p;
    auto out_adj = g.out_adj();

    for (int attempt = 0; attempt < g.order(); ++attempt) {
        const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.order())));
        if (out_adj[v].empty()) continue;
        std::vector<int> new_targets;
        for (int w = 0; w < g.order(); ++w)
            if (topo_pos[w] > topo_pos[v] && !g.has_edge(v, w)) new_targets.push_back(w);
        if (new_targets.empty()) continue;
        const int added = new_targets[rng.below(new_targets.size())];
        const int removed = out_adj[v][rng.below(out_adj[v].size())];
        std::vector<Edge> edges;
        for (auto [a, b] : g.edges())
            if (!(a == v && b == removed)) edges.emplace_back(a, b);
        edges.emplace_back(v, added);
        return detail::fix_io_labels(Dag(g.order(), std::move(edges), g.labels()), c, rng);
    }
    throw OpInapplicable("rewire: no applicable vertex");
}

namespace detail {

inline bool contraction_creates_cycle(const Dag& g, int u, int v) {
    // Merging adjacent u -> v cycles iff some other directed path u ~> v exists.
    auto adj = g.out_adj();
    std::vector<bool> seen(g.order(), false);
    std::vector<int> stack;
    for (int w : adj[u])
        if (w != v && !seen[w]) {
            seen[w] = true;
            stack.push_back(w);
        }
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        if (x == v) return true;
        for (int w : adj[x])
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    return false;
}

}  // namespace detail

/// Contracts a uniformly chosen adjacent pair into one vertex carrying the
/// union of both neighborhoods and a random label; pairs whose merge would
/// create a cycle are rejected and resampled.
inline Dag contract(const Dag& g, const SpaceConstraints& c, Rng& rng) {
    std::vector<Edge> contractible;
    for (auto [u, v] : g.edges())
        if (!detail::contraction_creates_cycle(g, u, v)) contractible.emplace_back(u, v);
    if (contractible.empty()) throw OpInapplicable("contract: no acyclic contraction exists");
    auto [u, v] = contractible[rng.below(contractible.size())];

    // v merges into u; ids above v shift down by one.
    auto remap = [&](int w) {
        if (w == v) return u > v ? u - 1 : u;
        return w > v ? w - 1 : w;
    };
    std::set<Edge> edges;
    for (auto [a, b] : g.edges()) {
        const int ra = remap(a), rb = remap(b);
        if (ra != rb) edges.insert({ra, rb});
    }
    std::map<int, std::string> labels;
    for (auto& [w, lab] : g.labels())
        if (w != u && w != v) labels[remap(w)] = lab;
    if (c.require_labels) labels[remap(u)] = c.label_alphabet[rng.below(c.label_alphabet.size())];
    Dag merged(g.order() - 1, {edges.begin(), edges.end()}, std::move(labels));
    return detail::fix_io_labels(merged, c, rng);
}

/// Splits a uniformly chosen vertex in two: the new vertex inherits all
/// outgoing edges and a fresh label (or a copy when duplicate_label), the
/// old vertex keeps the incoming edges and connects to the new one.
inline Dag distract(const Dag& g, const SpaceConstraints& c, Rng& rng, bool duplicate_label = false) {
    if (g.order() == 0) throw OpInapplicable("distract: empty graph");
    const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.order())));
    const int v_new = g.order();
    std::vector<Edge> edges;
    for (auto [a, b] : g.edges()) {
        if (a == v)
            edges.emplace_back(v_new, b);
        else
            edges.emplace_back(a, b);
    }
    edges.emplace_back(v, v_new);
    std::map<int, std::string> labels = g.labels();
    if (c.require_labels) {
        labels[v_new] =
            duplicate_label ? g.label_of(v) : c.label_alphabet[rng.below(c.label_alphabet.size())];
    }
    return detail::fix_io_labels(Dag(g.order() + 1, std::move(edges), std::move(labels)), c, rng);
}

enum class VariationOp { resample, relabel, rewire, contract, distract };

inline VariationOp variation_op_from_string(const std::string& s) {
    if (s == "resample") return VariationOp::resample;
    if (s == "relabel") return VariationOp::relabel;
    if (s == "rewire") return VariationOp::rewire;
    if (s == "contract") return VariationOp::contract;
    if (s == "distract") return VariationOp::distract;
    throw std::invalid_argument("unknown variation operator: " + s);
}

inline Dag apply_operator(VariationOp op, const Dag& g, const SpaceConstraints& c, Rng& rng) {
    switch (op) {
        case VariationOp::relabel: return relabel(g, c, rng);
        case VariationOp::rewire: return rewire(g, c, rng);
        case VariationOp::contract: return contract(g, c, rng);
        case VariationOp::distract: return distract(g, c, rng);
        case VariationOp::resample: throw std::invalid_argument("resample is not a unary operator");
    }
    throw std::invalid_argument("unknown operator");
}

/// Applies the operator until the output satisfies the constraints.
inline Dag vary_until_valid(const Dag& g, VariationOp op, const SpaceConstraints& c, Rng& rng,
                            int max_tries = 50) {
    if (!c.valid(g)) throw std::invalid_argument("vary_until_valid: input violates constraints");
    for (int t = 0; t < max_tries; ++t) {
        try {
            Dag candidate = apply_operator(op, g, c, rng);
            if (c.valid(candidate)) return candidate;
        } catch (const OpInapplicable&) {
            // resampling the operator's internal choices cannot help some
            // graphs; keep trying until the budget runs out
        }
    }
    throw std::runtime_error("vary_until_valid: retries exhausted");
}

// ---------------------------------------------------------------------------
// Evaluation and search

using SpaceSampler = std::function<Dag(Rng&)>;
using Evaluator = std::function<double(const Dag&, Rng&)>;

struct EvalRecord {
    Dag graph;
    double score = 0.0;
    double cost_seconds = 0.0;
    std::string provenance;
    int generation = 0;
};

struct EvolveConfig {
    int pop_size = 20;
    int generations = 20;
    double survivor_fraction = 0.5;
    std::map<VariationOp, double> op_mix = {{VariationOp::resample, 1.0}};
    SpaceConstraints constraints;
    std::uint64_t seed = 0;
    int vary_max_tries = 50;
};

struct EvolveResult {
    EvalRecord best;
    std::vector<EvalRecord> history;          // every evaluated candidate
    std::vector<double> best_score_per_gen;   // best-so-far trajectory
};

/// Elitist evolutionary search: evaluate, keep the top fraction, refill by
/// weighted operator draws applied to uniformly chosen survivors. Candidate
/// j of generation t draws randomness from hash(seed, t, j), so results do
/// not depend on evaluation order or thread count.
inline EvolveResult evolve(const SpaceSampler& sampler, const Evaluator& evaluator, EvolveConfig cfg) {
    if (cfg.pop_size < 2) throw std::invalid_argument("evolve: population too small");
    if (cfg.survivor_fraction <= 0.0 || cfg.survivor_fraction >= 1.0)
        throw std::invalid_argument("evolve: survivor fraction must be in (0, 1)");

    EvolveResult result;
    std::vector<std::pair<Dag, double>> population;  // (graph, score)

    double total_weight = 0.0;
    for (auto& [op, w] : cfg.op_mix) {
        if (w < 0) throw std::invalid_argument("evolve: negative operator weight");
        total_weight += w;
    }
    if (total_weight <= 0.0) throw std::invalid_argument("evolve: operator mix has no weight");

    auto draw_op = [&](Rng& rng) {
        double u = rng.uniform() * total_weight;
        for (auto& [op, w] : cfg.op_mix) {
            if (u < w) return op;
            u -= w;
        }
        return cfg.op_mix.rbegin()->first;
    };

    for (int t = 0; t < cfg.generations; ++t) {
        // Refill to pop_size.
        const std::size_t survivors = population.size();
        for (std::size_t j = population.size(); j < static_cast<std::size_t>(cfg.pop_size); ++j) {
            Rng rng(hash_seed(cfg.seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(j)));
            Dag candidate;
            if (t == 0 || survivors == 0) {
                candidate = sampler(rng);
            } else {
                const VariationOp op = draw_op(rng);
                const Dag& parent = population[rng.below(survivors)].first;
                if (op == VariationOp::resample) {
                    candidate = sampler(rng);
                } else {
                    try {
                        candidate = vary_until_valid(parent, op, cfg.constraints, rng, cfg.vary_max_tries);
                    } catch (const std::runtime_error&) {
                        candidate = sampler(rng);  // fall back to exploration
                    }
                }
            }
            Rng eval_rng(hash_seed(cfg.seed ^ 0x5eedULL, static_cast<std::uint64_t>(t),
                                   static_cast<std::uint64_t>(j)));
            const double score = evaluator(candidate, eval_rng);
            population.emplace_back(candidate, score);
            EvalRecord rec;
            rec.graph = candidate;
            rec.score = score;
            rec.provenance = "gen" + std::to_string(t);
            rec.generation = t;
            result.history.push_back(std::move(rec));
        }
        std::stable_sort(population.begin(), population.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        result.best_score_per_gen.push_back(population.front().second);
        const std::size_t keep = static_cast<std::size_t>(
            std::ceil(cfg.survivor_fraction * static_cast<double>(cfg.pop_size)));
        if (t + 1 < cfg.generations) population.resize(std::max<std::size_t>(1, keep));
    }

    result.best.graph = population.front().first;
    result.best.score = population.front().second;
    result.best.provenance = "evolve";
    return result;
}

struct OperatorDelta {
    int source_index = 0;
    int target_index = 0;
    double source_score = 0.0;
    double target_score = 0.0;
    double delta = 0.0;
    bool skipped = false;  // operator inapplicable within the retry budget
};

/// For each of n_sources sampled graphs, applies the operator up to
/// n_target times and records the score deltas; inapplicable applications
/// are recorded as skipped rows.
inline std::vector<OperatorDelta> operator_study(VariationOp op, const SpaceSampler& sampler,
                                                 const Evaluator& evaluator, int n_sources, int n_target,
                                                 const SpaceConstraints& constraints, std::uint64_t seed,
                                                 int vary_max_tries = 50) {
    if (n_sources < 1 || n_target < 1) throw std::invalid_argument("operator_study: counts must be >= 1");
    std::vector<OperatorDelta> rows;
    for (int i = 0; i < n_sources; ++i) {
        Rng rng(hash_seed(seed, static_cast<std::uint64_t>(i)));
        const Dag source = sampler(rng);
        Rng eval_rng(hash_seed(seed ^ 0xabcdULL, static_cast<std::uint64_t>(i)));
        const double source_score = evaluator(source, eval_rng);
        for (int j = 0; j < n_target; ++j) {
            Rng op_rng(hash_seed(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)));
            OperatorDelta row;
            row.source_index = i;
            row.target_index = j;
            row.source_score = source_score;
            try {
                const Dag varied = vary_until_valid(source, op, constraints, op_rng, vary_max_tries);
                Rng ev(hash_seed(seed ^ 0xfeedULL, static_cast<std::uint64_t>(i),
                                 static_cast<std::uint64_t>(j)));
                row.target_score = evaluator(varied, ev);
                row.delta = row.target_score - source_score;
            } catch (const std::exception&) {
                row.skipped = true;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Stock samplers and evaluators

/// Uniform DAGs decorated with constraint-conforming labels, rejection
/// sampled until valid under the constraints.
inline SpaceSampler make_udag_space(int n, const SpaceConstraints& c, int max_tries = 10000) {
    auto combs = std::make_shared<DagCombinatorics>(n);
    return [n, c, max_tries, combs](Rng& rng) {
        for (int t = 0; t < max_tries; ++t) {
            Dag g = sample_uniform_dag(n, rng, combs.get());
            std::map<int, std::string> labels;
            if (c.require_labels) {
                const auto sources = g.sources();
                const auto sinks = g.sinks();
                if (sources.size() != 1 || sinks.size() != 1) continue;
                for (int v = 0; v < g.order(); ++v) {
                    if (v == sources[0])
                        labels[v] = c.input_label;
                    else if (v == sinks[0])
                        labels[v] = c.output_label;
                    else
                        labels[v] = c.label_alphabet[rng.below(c.label_alphabet.size())];
                }
            }
            Dag labeled(g.order(), g.edges(), std::move(labels));
            if (c.valid(labeled)) return labeled;
        }
        throw std::runtime_error("make_udag_space: rejection budget exhausted");
    };
}

/// Synthetic evaluators keyed by name, for fast deterministic experiments.
inline Evaluator make_synthetic_evaluator(const std::string& name) {
    if (name == "density_target") {
        return [](const Dag& g, Rng&) {
            return g.order() < 2 ? -1.0 : -std::abs(density(g) - 0.3);
        };
    }
    if (name == "order") {
        return [](const Dag& g, Rng&) { return g.order() / 10.0; };
    }
    if (name == "constant") {
        return [](const Dag&, Rng&) { return 0.5; };
    }
    if (name == "mean_degree") {
        return [](const Dag& g, Rng&) {
            return g.order() == 0 ? 0.0 : 2.0 * g.size() / static_cast<double>(g.order());
        };
    }
    throw std::invalid_argument("unknown synthetic evaluator: " + name);
}

}  // namespace gin
