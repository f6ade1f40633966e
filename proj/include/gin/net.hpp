#pragma once

// Masked feed-forward networks constructed from DAGs. Every graph vertex
// expands to a block of neurons sized by a Dirichlet proportion of the
// scale budget; weight matrices exist per layer pair with at least one
// graph edge and carry exact-zero masks realizing the graph connectivity.

#include <cmath>
#include <cstring>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gin/graph.hpp"
#include "gin/graph_json.hpp"
#include "gin/matrix.hpp"
#include "gin/rng.hpp"

namespace gin {

enum class Activation { relu, sigmoid, tanh_fn, identity, leaky_relu };

inline std::string to_string(Activation a) {
    switch (a) {
        case Activation::relu: return "relu";
        case Activation::sigmoid: return "sigmoid";
        case Activation::tanh_fn: return "tanh";
        case Activation::identity: return "identity";
        case Activation::leaky_relu: return "leaky_relu";
    }
    return "relu";
}

inline Activation activation_from_string(const std::string& s) {
    if (s == "relu") return Activation::relu;
    if (s == "sigmoid") return Activation::sigmoid;
    if (s == "tanh") return Activation::tanh_fn;
    if (s == "identity") return Activation::identity;
    if (s == "leaky_relu") return Activation::leaky_relu;
    throw std::invalid_argument("unknown activation: " + s);
}

struct InitSpec {
    enum class Kind { normal, uniform };
    Kind kind = Kind::normal;
    double p1 = 0.0;  // mu | lo
    double p2 = 0.5;  // sigma | hi
};

struct BuildSpec {
    int input_dim = 1;
    int output_dim = 1;
    int scale = 1;
    double proportion_concentration = 100.0;
    Activation activation = Activation::relu;
    double leaky_beta = 0.01;
    InitSpec init;
    bool layer_norm = false;
    bool classifier_softmax = false;
    std::uint64_t seed = 0;
};

inline constexpr double kLayerNormEps = 1e-12;

struct MaskedNetwork {
    Dag graph;
    Layering lay;
    std::vector<int> block_size;    // per vertex
    std::vector<int> block_offset;  // per vertex, within its layer
    std::vector<int> layer_size;    // neurons per layer

    std::map<std::pair<int, int>, Mat> W;  // (s, l) -> N_l x N_s
    std::map<std::pair<int, int>, Mat> M;  // same shape, entries 0/1
    std::vector<Vec> bias;                 // index by layer; bias[0] stays empty

    bool entry_identity = true;
    bool entry_trainable = true;  // frozen entries keep their affine map fixed
    Mat W_entry;  // N_0 x d_in
    Vec b_entry;
    bool exit_identity = true;
    Mat W_exit;  // d_out x sink_dim
    Vec b_exit;

    bool layer_norm = false;
    std::vector<Vec> norm_gamma, norm_beta;  // index by layer (>= 1)

    Activation act = Activation::relu;
    double leaky_beta = 0.01;
    bool classifier_softmax = false;
    bool squash_replaced = false;  // sink activation replaced by identity

    BuildSpec spec;

    std::vector<int> sink_vertices;            // ascending vertex id
    std::vector<std::vector<char>> sink_mask;  // per layer, per neuron
    int sink_dim = 0;
    std::size_t prunable_capacity = 0;  // mask entries ever unmasked (build + rewiring)

    int depth() const { return lay.depth; }

    bool is_sink_neuron(int layer, int idx) const { return sink_mask[layer][idx] != 0; }

    std::size_t parameter_count() const {
        std::size_t n = 0;
        for (auto& [key, m] : M) {
            (void)key;
            for (double x : m.a) n += x != 0.0 ? 1 : 0;
        }
        for (std::size_t l = 1; l < bias.size(); ++l) n += bias[l].size();
        if (!entry_identity) n += W_entry.size() + b_entry.size();
        if (!exit_identity) n += W_exit.size() + b_exit.size();
        if (layer_norm)
            for (std::size_t l = 1; l < norm_gamma.size(); ++l)
                n += norm_gamma[l].size() + norm_beta[l].size();
        return n;
    }
};

namespace detail {

inline double apply_act(Activation a, double leaky, double z) {
    switch (a) {
        case Activation::relu: return z > 0.0 ? z : 0.0;
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
        case Activation::tanh_fn: return std::tanh(z);
        case Activation::identity: return z;
        case Activation::leaky_relu: return z > 0.0 ? z : leaky * z;
    }
    return z;
}

inline double act_derivative(Activation a, double leaky, double z, double h) {
    switch (a) {
        case Activation::relu: return z > 0.0 ? 1.0 : 0.0;
        case Activation::sigmoid: return h * (1.0 - h);
        case Activation::tanh_fn: return 1.0 - h * h;
        case Activation::identity: return 1.0;
        case Activation::leaky_relu: return z > 0.0 ? 1.0 : leaky;
    }
    return 1.0;
}

inline bool squashing(Activation a) { return a == Activation::sigmoid || a == Activation::tanh_fn; }

inline Vec softmax(const Vec& z) {
    double zmax = z[0];
    for (double v : z) zmax = std::max(zmax, v);
    Vec p(z.size());
    double total = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        p[i] = std::exp(z[i] - zmax);
        total += p[i];
    }
    for (auto& v : p) v /= total;
    return p;
}

inline double init_draw(const InitSpec& init, Rng& rng) {
    return init.kind == InitSpec::Kind::normal ? rng.normal(init.p1, init.p2)
                                               : rng.uniform(init.p1, init.p2);
}

}  // namespace detail

/// Expands a DAG into a masked network per the build spec. Block sizes are
/// floor(scale * proportion) with the leftover distributed +1 by ascending
/// vertex id (a zero-sized block steals one neuron from the largest block,
/// which keeps every vertex representable).
inline MaskedNetwork build_network(const Dag& g, const BuildSpec& spec) {
    if (g.order() < 1) throw std::invalid_argument("build_network: empty graph");
    if (spec.scale < g.order()) throw std::invalid_argument("build_network: scale below graph order");
    if (spec.input_dim < 1 || spec.output_dim < 1)
        throw std::invalid_argument("build_network: bad dimensions");

    MaskedNetwork net;
    net.graph = g;
    net.lay = layering(g);
    net.act = spec.activation;
    net.leaky_beta = spec.leaky_beta;
    net.layer_norm = spec.layer_norm;
    net.classifier_softmax = spec.classifier_softmax;
    net.squash_replaced = spec.classifier_softmax && detail::squashing(spec.activation);
    net.spec = spec;

    Rng rng(spec.seed);
    const int n = g.order();

    // Dirichlet proportions, floored, remainder to lowest ids.
    const auto props = rng.dirichlet(static_cast<std::size_t>(n), spec.proportion_concentration);
    net.block_size.assign(n, 0);
    int used = 0;
    for (int v = 0; v < n; ++v) {
        net.block_size[v] = static_cast<int>(spec.scale * props[v]);
        used += net.block_size[v];
    }
    for (int v = 0; used < spec.scale; v = (v + 1) % n) {
        ++net.block_size[v];
        ++used;
    }
    for (int v = 0; v < n; ++v) {
        while (net.block_size[v] == 0) {
            int largest = 0;
            for (int u = 1; u < n; ++u)
                if (net.block_size[u] > net.block_size[largest]) largest = u;
            --net.block_size[largest];
            ++net.block_size[v];
        }
    }

    const int n_layers = net.lay.depth + 1;
    net.layer_size.assign(n_layers, 0);
    net.block_offset.assign(n, 0);
    for (int l = 0; l < n_layers; ++l) {
        int offset = 0;
        for (int v : net.lay.layers[l]) {
            net.block_offset[v] = offset;
            offset += net.block_size[v];
        }
        net.layer_size[l] = offset;
    }

    // Weight/mask matrices per layer pair with at least one edge.
    std::map<std::pair<int, int>, std::vector<Edge>> pair_edges;
    for (auto [u, v] : g.edges())
        pair_edges[{net.lay.layer_of[u], net.lay.layer_of[v]}].push_back({u, v});
    for (auto& [key, edges] : pair_edges) {
        auto [s, l] = key;
        Mat w(net.layer_size[l], net.layer_size[s]);
        Mat m(net.layer_size[l], net.layer_size[s]);
        for (auto [u, v] : edges) {
            for (int i = 0; i < net.block_size[v]; ++i)
                for (int j = 0; j < net.block_size[u]; ++j)
                    m(net.block_offset[v] + i, net.block_offset[u] + j) = 1.0;
        }
        net.W.emplace(key, std::move(w));
        net.M.emplace(key, std::move(m));
    }
    // Draw weights in a fixed order (map order), zeros where masked.
    for (auto& [key, w] : net.W) {
        const Mat& m = net.M.at(key);
        for (std::size_t i = 0; i < w.a.size(); ++i)
            w.a[i] = m.a[i] != 0.0 ? detail::init_draw(spec.init, rng) : 0.0;
    }

    net.bias.assign(n_layers, {});
    for (int l = 1; l < n_layers; ++l) {
        net.bias[l].assign(net.layer_size[l], 0.0);
        for (auto& b : net.bias[l]) b = detail::init_draw(spec.init, rng);
    }
    // Source blocks sit in layer 0 and carry no bias by construction.

    net.sink_vertices = g.sinks();
    net.sink_dim = 0;
    net.sink_mask.assign(n_layers, {});
    for (int l = 0; l < n_layers; ++l) net.sink_mask[l].assign(net.layer_size[l], 0);
    for (int v : net.sink_vertices) {
        net.sink_dim += net.block_size[v];
        const int l = net.lay.layer_of[v];
        for (int i = 0; i < net.block_size[v]; ++i) net.sink_mask[l][net.block_offset[v] + i] = 1;
    }

    net.entry_identity = net.layer_size[0] == spec.input_dim;
    if (!net.entry_identity) {
        net.W_entry = Mat(net.layer_size[0], spec.input_dim);
        for (auto& x : net.W_entry.a) x = detail::init_draw(spec.init, rng);
        net.b_entry.assign(net.layer_size[0], 0.0);
        for (auto& b : net.b_entry) b = detail::init_draw(spec.init, rng);
    }
    net.exit_identity = net.sink_dim == spec.output_dim;
    if (!net.exit_identity) {
        net.W_exit = Mat(spec.output_dim, net.sink_dim);
        for (auto& x : net.W_exit.a) x = detail::init_draw(spec.init, rng);
        net.b_exit.assign(spec.output_dim, 0.0);
        for (auto& b : net.b_exit) b = detail::init_draw(spec.init, rng);
    }

    if (spec.layer_norm) {
        net.norm_gamma.assign(n_layers, {});
        net.norm_beta.assign(n_layers, {});
        for (int l = 1; l < n_layers; ++l) {
            net.norm_gamma[l].assign(net.layer_size[l], 1.0);
            net.norm_beta[l].assign(net.layer_size[l], 0.0);
        }
    }
    net.prunable_capacity = 0;
    for (auto& [key, m] : net.M) {
        (void)key;
        for (double x : m.a) net.prunable_capacity += x != 0.0 ? 1 : 0;
    }
    return net;
}

/// Re-initializes a non-identity entry to the affine map standardizing the
/// given inputs per dimension (replicated across the source block) and
/// freezes it. Folding input standardization into the entry keeps forward
/// semantics self-contained while giving the trainable layers unit-scale
/// inputs.
inline void standardize_entry(MaskedNetwork& net, const std::vector<Vec>& xs) {
    if (net.entry_identity) throw std::invalid_argument("standardize_entry: entry is the identity");
    if (xs.empty()) throw std::invalid_argument("standardize_entry: no data");
    const int d = net.spec.input_dim;
    Vec mu(d, 0.0), sd(d, 0.0);
    for (const auto& x : xs)
        for (int j = 0; j < d; ++j) mu[j] += x[j];
    for (int j = 0; j < d; ++j) mu[j] /= static_cast<double>(xs.size());
    for (const auto& x : xs)
        for (int j = 0; j < d; ++j) sd[j] += (x[j] - mu[j]) * (x[j] - mu[j]);
    for (int j = 0; j < d; ++j) {
        sd[j] = std::sqrt(sd[j] / static_cast<double>(xs.size()));
        if (sd[j] == 0.0) sd[j] = 1.0;
    }
    for (auto& w : net.W_entry.a) w = 0.0;
    for (int i = 0; i < net.W_entry.rows; ++i) {
        const int j = i % d;
        net.W_entry(i, j) = 1.0 / sd[j];
        net.b_entry[i] = -mu[j] / sd[j];
    }
    net.entry_trainable = false;
}

inline std::size_t live_weight_count(const MaskedNetwork& net) {
    std::size_t live = 0;
    for (auto& [key, m] : net.M) {
        (void)key;
        for (double x : m.a) live += x != 0.0 ? 1 : 0;
    }
    return live;
}

/// Fraction of ever-prunable weight coordinates currently masked out.
inline double sparsity(const MaskedNetwork& net) {
    if (net.prunable_capacity == 0) return 0.0;
    return 1.0 - static_cast<double>(live_weight_count(net)) / static_cast<double>(net.prunable_capacity);
}

struct ForwardTrace {
    std::vector<Vec> h;        // post-activations per layer
    std::vector<Vec> z;        // raw pre-activations
    std::vector<Vec> z_hat;    // normalized pre-activations (layer norm)
    std::vector<Vec> z_act_in; // activation inputs (post gamma/beta when LN)
    std::vector<double> mu, sd;
    Vec sink_h;
    Vec out_pre;  // exit output before optional softmax
    Vec out;
};

inline ForwardTrace forward_trace(const MaskedNetwork& net, const Vec& x) {
    if (static_cast<int>(x.size()) != net.spec.input_dim)
        throw std::invalid_argument("forward: input dimension mismatch");
    const int n_layers = net.lay.depth + 1;
    ForwardTrace tr;
    tr.h.assign(n_layers, {});
    tr.z.assign(n_layers, {});
    tr.z_hat.assign(n_layers, {});
    tr.z_act_in.assign(n_layers, {});
    tr.mu.assign(n_layers, 0.0);
    tr.sd.assign(n_layers, 1.0);

    if (net.entry_identity) {
        tr.h[0] = x;
    } else {
        tr.h[0] = net.b_entry;
        matvec_acc(net.W_entry, x, tr.h[0]);
    }
    tr.z[0] = tr.h[0];

    for (int l = 1; l < n_layers; ++l) {
        Vec z = net.bias[l];
        for (int s = 0; s < l; ++s) {
            auto it = net.W.find({s, l});
            if (it != net.W.end()) matvec_acc(it->second, tr.h[s], z);
        }
        tr.z[l] = z;
        Vec act_in;
        if (net.layer_norm) {
            const int h_n = static_cast<int>(z.size());
            double mu = 0.0;
            for (double v : z) mu += v;
            mu /= h_n;
            double var = 0.0;
            for (double v : z) var += (v - mu) * (v - mu);
            var /= h_n;
            const double sd = std::sqrt(var + kLayerNormEps);
            tr.mu[l] = mu;
            tr.sd[l] = sd;
            tr.z_hat[l].resize(z.size());
            act_in.resize(z.size());
            for (std::size_t i = 0; i < z.size(); ++i) {
                tr.z_hat[l][i] = (z[i] - mu) / sd;
                act_in[i] = net.norm_gamma[l][i] * tr.z_hat[l][i] + net.norm_beta[l][i];
            }
        } else {
            act_in = z;
        }
        tr.z_act_in[l] = act_in;
        Vec h(act_in.size());
        for (std::size_t i = 0; i < act_in.size(); ++i) {
            const bool id_here = net.squash_replaced && net.is_sink_neuron(l, static_cast<int>(i));
            h[i] = id_here ? act_in[i] : detail::apply_act(net.act, net.leaky_beta, act_in[i]);
        }
        tr.h[l] = std::move(h);
    }

    tr.sink_h.clear();
    for (int v : net.sink_vertices) {
        const int l = net.lay.layer_of[v];
        for (int i = 0; i < net.block_size[v]; ++i)
            tr.sink_h.push_back(tr.h[l][net.block_offset[v] + i]);
    }
    if (net.exit_identity) {
        tr.out_pre = tr.sink_h;
    } else {
        tr.out_pre = net.b_exit;
        matvec_acc(net.W_exit, tr.sink_h, tr.out_pre);
    }
    tr.out = net.classifier_softmax ? detail::softmax(tr.out_pre) : tr.out_pre;
    return tr;
}

inline Vec forward(const MaskedNetwork& net, const Vec& x) { return forward_trace(net, x).out; }

/// Block-level structure recovery: one vertex per block, an edge where the
/// mask block still has at least one live entry.
inline Dag extract_graph(const MaskedNetwork& net) {
    std::vector<Edge> edges;
    for (auto [u, v] : net.graph.edges()) {
        const int s = net.lay.layer_of[u];
        const int l = net.lay.layer_of[v];
        const Mat& m = net.M.at({s, l});
        bool live = false;
        for (int i = 0; i < net.block_size[v] && !live; ++i)
            for (int j = 0; j < net.block_size[u] && !live; ++j)
                if (m(net.block_offset[v] + i, net.block_offset[u] + j) != 0.0) live = true;
        if (live) edges.emplace_back(u, v);
    }
    return Dag(net.graph.order(), std::move(edges));
}

// ---------------------------------------------------------------------------
// Checkpoint io: length-prefixed JSON header plus little-endian f64 arrays.

namespace detail {

inline void put_u64_le(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::uint64_t get_u64_le(const std::string& s, std::size_t& pos) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[pos++])) << (8 * i);
    return v;
}

inline void put_f64_vec(std::string& out, const std::vector<double>& v) {
    for (double d : v) {
        std::uint64_t bits;
        std::memcpy(&bits, &d, 8);
        put_u64_le(out, bits);
    }
}

inline void get_f64_vec(const std::string& s, std::size_t& pos, std::vector<double>& v, std::size_t count) {
    v.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t bits = get_u64_le(s, pos);
        double d;
        std::memcpy(&d, &bits, 8);
        v[i] = d;
    }
}

}  // namespace detail

inline nlohmann::ordered_json spec_to_json(const BuildSpec& s) {
    nlohmann::ordered_json j;
    j["input_dim"] = s.input_dim;
    j["output_dim"] = s.output_dim;
    j["scale"] = s.scale;
    j["proportion_concentration"] = s.proportion_concentration;
    j["activation"] = to_string(s.activation);
    j["leaky_beta"] = s.leaky_beta;
    j["init"] = {{"kind", s.init.kind == InitSpec::Kind::normal ? "normal" : "uniform"},
                 {"p1", s.init.p1},
                 {"p2", s.init.p2}};
    j["layer_norm"] = s.layer_norm;
    j["classifier_softmax"] = s.classifier_softmax;
    j["seed"] = s.seed;
    return j;
}

inline BuildSpec spec_from_json(const nlohmann::json& j) {
    BuildSpec s;
    s.input_dim = j.at("input_dim").get<int>();
    s.output_dim = j.at("output_dim").get<int>();
    s.scale = j.at("scale").get<int>();
    s.proportion_concentration = j.at("proportion_concentration").get<double>();
    s.activation = activation_from_string(j.at("activation").get<std::string>());
    s.leaky_beta = j.at("leaky_beta").get<double>();
    s.init.kind = j.at("init").at("kind").get<std::string>() == "normal" ? InitSpec::Kind::normal
                                                                         : InitSpec::Kind::uniform;
    s.init.p1 = j.at("init").at("p1").get<double>();
    s.init.p2 = j.at("init").at("p2").get<double>();
    s.layer_norm = j.at("layer_norm").get<bool>();
    s.classifier_softmax = j.at("classifier_softmax").get<bool>();
    s.seed = j.at("seed").get<std::uint64_t>();
    return s;
}

inline std::string serialize_network(const MaskedNetwork& net) {
    nlohmann::ordered_json header;
    header["format"] = "gin-net-1";
    header["spec"] = spec_to_json(net.spec);
    header["graph"] = to_json(net.graph);
    header["prunable_capacity"] = net.prunable_capacity;
    header["entry_trainable"] = net.entry_trainable;
    auto arrays = nlohmann::ordered_json::array();
    std::string payload;
    auto add_array = [&](const std::string& name, int rows, int cols, const std::vector<double>& data) {
        arrays.push_back({{"name", name}, {"rows", rows}, {"cols", cols}});
        detail::put_f64_vec(payload, data);
    };
    for (auto& [key, w] : net.W) {
        const std::string suffix = std::to_string(key.first) + "_" + std::to_string(key.second);
        add_array("W_" + suffix, w.rows, w.cols, w.a);
        const Mat& m = net.M.at(key);
        add_array("M_" + suffix, m.rows, m.cols, m.a);
    }
    for (std::size_t l = 1; l < net.bias.size(); ++l)
        add_array("B_" + std::to_string(l), 1, static_cast<int>(net.bias[l].size()), net.bias[l]);
    if (!net.entry_identity) {
        add_array("W_entry", net.W_entry.rows, net.W_entry.cols, net.W_entry.a);
        add_array("b_entry", 1, static_cast<int>(net.b_entry.size()), net.b_entry);
    }
    if (!net.exit_identity) {
        add_array("W_exit", net.W_exit.rows, net.W_exit.cols, net.W_exit.a);
        add_array("b_exit", 1, static_cast<int>(net.b_exit.size()), net.b_exit);
    }
    if (net.layer_norm) {
        for (std::size_t l = 1; l < net.norm_gamma.size(); ++l) {
            add_array("gamma_" + std::to_string(l), 1, static_cast<int>(net.norm_gamma[l].size()),
                      net.norm_gamma[l]);
            add_array("beta_" + std::to_string(l), 1, static_cast<int>(net.norm_beta[l].size()),
                      net.norm_beta[l]);
        }
    }
    header["arrays"] = std::move(arrays);

    std::string out = "GINCKPT1";
    const std::string head = header.dump();
    detail::put_u64_le(out, head.size());
    out += head;
    out += payload;
    return out;
}

inline MaskedNetwork deserialize_network(const std::string& blob) {
    if (blob.size() < 16 || blob.compare(0, 8, "GINCKPT1") != 0)
        throw std::invalid_argument("checkpoint: bad magic");
    std::size_t pos = 8;
    const std::uint64_t head_len = detail::get_u64_le(blob, pos);
    const nlohmann::json header = nlohmann::json::parse(blob.substr(pos, head_len));
    pos += head_len;

    const BuildSpec spec = spec_from_json(header.at("spec"));
    const Dag graph = dag_from_json(header.at("graph"));
    MaskedNetwork net = build_network(graph, spec);
    if (header.contains("prunable_capacity"))
        net.prunable_capacity = header.at("prunable_capacity").get<std::size_t>();
    if (header.contains("entry_trainable")) net.entry_trainable = header.at("entry_trainable").get<bool>();

    for (auto& arr : header.at("arrays")) {
        const std::string name = arr.at("name").get<std::string>();
        const int rows = arr.at("rows").get<int>();
        const int cols = arr.at("cols").get<int>();
        std::vector<double> data;
        detail::get_f64_vec(blob, pos, data, static_cast<std::size_t>(rows) * cols);
        auto parse_pair = [&](const std::string& s) {
            const auto us = s.find('_');
            return std::pair<int, int>{std::stoi(s.substr(0, us)), std::stoi(s.substr(us + 1))};
        };
        if (name.rfind("W_entry", 0) == 0) {
            net.W_entry.a = std::move(data);
        } else if (name.rfind("b_entry", 0) == 0) {
            net.b_entry = std::move(data);
        } else if (name.rfind("W_exit", 0) == 0) {
            net.W_exit.a = std::move(data);
        } else if (name.rfind("b_exit", 0) == 0) {
            net.b_exit = std::move(data);
        } else if (name.rfind("W_", 0) == 0) {
            // Rewiring may have created matrices a fresh build lacks.
            auto key = parse_pair(name.substr(2));
            auto [it, inserted] = net.W.try_emplace(key, Mat(rows, cols));
            it->second.a = std::move(data);
        } else if (name.rfind("M_", 0) == 0) {
            auto key = parse_pair(name.substr(2));
            auto [it, inserted] = net.M.try_emplace(key, Mat(rows, cols));
            it->second.a = std::move(data);
        } else if (name.rfind("B_", 0) == 0) {
            net.bias[std::stoul(name.substr(2))] = std::move(data);
        } else if (name.rfind("gamma_", 0) == 0) {
            net.norm_gamma[std::stoul(name.substr(6))] = std::move(data);
        } else if (name.rfind("beta_", 0) == 0) {
            net.norm_beta[std::stoul(name.substr(5))] = std::move(data);
        } else {
            throw std::invalid_argument("checkpoint: unknown array " + name);
        }
    }
    return net;
}

inline void save_network(const MaskedNetwork& net, const std::string& path) {
    write_text_file(path, serialize_network(net));
}

inline MaskedNetwork load_network(const std::string& path) {
    return deserialize_network(read_text_file(path));
}

}  // namespace gin
