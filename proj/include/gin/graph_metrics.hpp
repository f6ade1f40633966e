#pragma once

// Network-scientific vertex measures and the fixed structural feature set
// used for performance prediction.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gin/graph.hpp"

namespace gin {

/// Normalized closeness with the component-size correction: for vertex v
/// with r reachable vertices (v included) and distance sum d,
/// C(v) = ((r-1)/d) * ((r-1)/(n-1)); isolated vertices get 0.
inline double closeness_centrality(const UGraph& g, int v) {
    if (g.order() < 2) throw std::domain_error("closeness_centrality: order must be >= 2");
    if (v < 0 || v >= g.order()) throw std::invalid_argument("closeness_centrality: vertex out of range");
    auto dist = bfs_distances(g.adj(), v);
    double sum = 0.0;
    int reachable = 0;
    for (int t = 0; t < g.order(); ++t) {
        if (dist[t] >= 0) {
            ++reachable;
            sum += dist[t];
        }
    }
    if (reachable <= 1 || sum == 0.0) return 0.0;
    const double r1 = reachable - 1.0;
    return (r1 / sum) * (r1 / (g.order() - 1.0));
}

struct ClusteringResult {
    std::vector<double> local;
    double mean = 0.0;
};

/// Local clustering coefficients; vertices of degree < 2 get 0.
inline ClusteringResult clustering_coefficients(const UGraph& g) {
    ClusteringResult res;
    res.local.assign(g.order(), 0.0);
    auto adj = g.adj();
    for (int v = 0; v < g.order(); ++v) {
        const auto& nb = adj[v];
        const int d = static_cast<int>(nb.size());
        if (d < 2) continue;
        int links = 0;
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (g.has_edge(nb[i], nb[j])) ++links;
        res.local[v] = 2.0 * links / (static_cast<double>(d) * (d - 1));
    }
    for (double c : res.local) res.mean += c;
    if (g.order() > 0) res.mean /= g.order();
    return res;
}

struct EccentricityResult {
    std::vector<int> ecc;  // per vertex, within its component
    int diameter = 0;
};

inline EccentricityResult eccentricities(const UGraph& g) {
    EccentricityResult res;
    res.ecc.assign(g.order(), 0);
    auto adj = g.adj();
    for (int v = 0; v < g.order(); ++v) {
        auto dist = bfs_distances(adj, v);
        int e = 0;
        for (int t = 0; t < g.order(); ++t) e = std::max(e, dist[t]);
        res.ecc[v] = e;
        res.diameter = std::max(res.diameter, e);
    }
    return res;
}

struct Aggregates {
    double min = 0.0, max = 0.0, median = 0.0, mean = 0.0, var = 0.0;
};

/// min/max/median/mean/population-variance of a value list; all zeros for
/// an empty list (degenerate convention).
inline Aggregates aggregate(std::vector<double> xs) {
    Aggregates a;
    if (xs.empty()) return a;
    std::sort(xs.begin(), xs.end());
    a.min = xs.front();
    a.max = xs.back();
    const std::size_t n = xs.size();
    a.median = (n % 2 == 1) ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
    for (double x : xs) a.mean += x;
    a.mean /= static_cast<double>(n);
    for (double x : xs) a.var += (x - a.mean) * (x - a.mean);
    a.var /= static_cast<double>(n);
    return a;
}

inline const std::vector<std::string>& feature_names() {
    static const std::vector<std::string> names = {
        "graph_num_vertices", "graph_num_edges", "num_sources", "num_sinks", "num_hidden",
        "num_layers", "num_paths", "density",
        "degree_min", "degree_max", "degree_median", "degree_mean", "degree_var",
        "undir_ecc_min", "undir_ecc_max", "undir_ecc_median", "undir_ecc_mean", "undir_ecc_var",
        "shortestpaths_min", "shortestpaths_max", "shortestpaths_median", "shortestpaths_mean",
        "shortestpaths_var",
        "layersize_min", "layersize_max", "layersize_median", "layersize_mean", "layersize_var"};
    return names;
}

struct FeatureVector {
    std::map<std::string, double> values;

    double at(const std::string& key) const { return values.at(key); }

    std::vector<double> ordered() const {
        std::vector<double> out;
        out.reserve(feature_names().size());
        for (auto& k : feature_names()) out.push_back(values.at(k));
        return out;
    }
};

/// The fixed scalar feature set of a DAG. Shortest-path statistics are over
/// the multiset of finite directed distances between ordered vertex pairs;
/// num_paths counts those pairs; eccentricities are taken on the undirected
/// shadow; layer sizes come from the longest-path layering. Degenerate
/// aggregates (no finite pairs, single vertex) are 0, and density of an
/// order-1 graph is 0 by convention.
inline FeatureVector structural_features(const Dag& g) {
    if (g.order() < 1) throw std::domain_error("structural_features: order must be >= 1");
    FeatureVector f;
    const int n = g.order();
    f.values["graph_num_vertices"] = n;
    f.values["graph_num_edges"] = g.size();
    f.values["num_sources"] = static_cast<double>(g.sources().size());
    f.values["num_sinks"] = static_cast<double>(g.sinks().size());
    f.values["num_hidden"] =
        n - static_cast<double>(g.sources().size()) - static_cast<double>(g.sinks().size());
    const Layering lay = layering(g);
    f.values["num_layers"] = lay.depth + 1;
    f.values["density"] = n < 2 ? 0.0 : density(g);

    auto out_adj = g.out_adj();
    std::vector<double> finite_dists;
    for (int s = 0; s < n; ++s) {
        auto d = bfs_distances(out_adj, s);
        for (int t = 0; t < n; ++t)
            if (t != s && d[t] > 0) finite_dists.push_back(d[t]);
    }
    f.values["num_paths"] = static_cast<double>(finite_dists.size());
    const Aggregates sp = aggregate(finite_dists);
    f.values["shortestpaths_min"] = sp.min;
    f.values["shortestpaths_max"] = sp.max;
    f.values["shortestpaths_median"] = sp.median;
    f.values["shortestpaths_mean"] = sp.mean;
    f.values["shortestpaths_var"] = sp.var;

    auto in_deg = g.in_degrees();
    auto out_deg = g.out_degrees();
    std::vector<double> degs(n);
    for (int v = 0; v < n; ++v) degs[v] = in_deg[v] + out_deg[v];
    const Aggregates dg = aggregate(degs);
    f.values["degree_min"] = dg.min;
    f.values["degree_max"] = dg.max;
    f.values["degree_median"] = dg.median;
    f.values["degree_mean"] = dg.mean;
    f.values["degree_var"] = dg.var;

    const auto ecc = eccentricities(undirected_shadow(g));
    std::vector<double> eccs(ecc.ecc.begin(), ecc.ecc.end());
    const Aggregates ec = aggregate(eccs);
    f.values["undir_ecc_min"] = ec.min;
    f.values["undir_ecc_max"] = ec.max;
    f.values["undir_ecc_median"] = ec.median;
    f.values["undir_ecc_mean"] = ec.mean;
    f.values["undir_ecc_var"] = ec.var;

    std::vector<double> sizes;
    for (auto& l : lay.layers) sizes.push_back(static_cast<double>(l.size()));
    const Aggregates ls = aggregate(sizes);
    f.values["layersize_min"] = ls.min;
    f.values["layersize_max"] = ls.max;
    f.values["layersize_median"] = ls.median;
    f.values["layersize_mean"] = ls.mean;
    f.values["layersize_var"] = ls.var;
    return f;
}

}  // namespace gin
