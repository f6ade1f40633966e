#pragma once

// Losses, reverse-mode gradients specialized to the masked-network forward
// pass, SGD updates and the minibatch training loop.

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "gin/net.hpp"
#include "gin/rng.hpp"

namespace gin {

enum class Loss { cross_entropy, mse, mae };

inline std::string to_string(Loss l) {
    switch (l) {
        case Loss::cross_entropy: return "cross_entropy";
        case Loss::mse: return "mse";
        case Loss::mae: return "mae";
    }
    return "mse";
}

inline Loss loss_from_string(const std::string& s) {
    if (s == "cross_entropy" || s == "ce") return Loss::cross_entropy;
    if (s == "mse") return Loss::mse;
    if (s == "mae") return Loss::mae;
    throw std::invalid_argument("unknown loss: " + s);
}

inline constexpr double kCeClamp = 1e-12;

/// Batch-mean loss. Cross-entropy expects probability predictions and
/// one-hot targets; probabilities are clamped to [1e-12, 1].
inline double loss_value(Loss kind, const std::vector<Vec>& predictions, const std::vector<Vec>& targets) {
    if (predictions.size() != targets.size() || predictions.empty())
        throw std::invalid_argument("loss: shape mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const Vec& p = predictions[i];
        const Vec& y = targets[i];
        if (p.size() != y.size()) throw std::invalid_argument("loss: shape mismatch");
        switch (kind) {
            case Loss::cross_entropy:
                for (std::size_t k = 0; k < p.size(); ++k) {
                    const double clamped = std::min(std::max(p[k], kCeClamp), 1.0);
                    total -= y[k] * std::log(clamped);
                }
                break;
            case Loss::mse:
                for (std::size_t k = 0; k < p.size(); ++k) total += (p[k] - y[k]) * (p[k] - y[k]);
                break;
            case Loss::mae:
                for (std::size_t k = 0; k < p.size(); ++k) total += std::abs(p[k] - y[k]);
                break;
        }
    }
    return total / static_cast<double>(predictions.size());
}

struct Gradients {
    std::map<std::pair<int, int>, Mat> W;
    std::vector<Vec> bias;
    Mat W_entry;
    Vec b_entry;
    Mat W_exit;
    Vec b_exit;
    std::vector<Vec> gamma, beta;
};

inline Gradients zero_gradients(const MaskedNetwork& net) {
    Gradients g;
    for (auto& [key, w] : net.W) g.W.emplace(key, Mat(w.rows, w.cols));
    g.bias.resize(net.bias.size());
    for (std::size_t l = 1; l < net.bias.size(); ++l) g.bias[l].assign(net.bias[l].size(), 0.0);
    if (!net.entry_identity && net.entry_trainable) {
        g.W_entry = Mat(net.W_entry.rows, net.W_entry.cols);
        g.b_entry.assign(net.b_entry.size(), 0.0);
    }
    if (!net.exit_identity) {
        g.W_exit = Mat(net.W_exit.rows, net.W_exit.cols);
        g.b_exit.assign(net.b_exit.size(), 0.0);
    }
    if (net.layer_norm) {
        g.gamma.resize(net.norm_gamma.size());
        g.beta.resize(net.norm_beta.size());
        for (std::size_t l = 1; l < net.norm_gamma.size(); ++l) {
            g.gamma[l].assign(net.norm_gamma[l].size(), 0.0);
            g.beta[l].assign(net.norm_beta[l].size(), 0.0);
        }
    }
    return g;
}

namespace detail {

/// dL/d(out_pre) for one sample, already divided by the batch size.
inline Vec output_delta(const MaskedNetwork& net, Loss kind, const ForwardTrace& tr, const Vec& y,
                        double inv_batch) {
    const std::size_t d = tr.out.size();
    Vec delta(d, 0.0);
    if (net.classifier_softmax && kind == Loss::cross_entropy) {
        for (std::size_t k = 0; k < d; ++k) delta[k] = (tr.out[k] - y[k]) * inv_batch;
        return delta;
    }
    Vec dout(d, 0.0);
    switch (kind) {
        case Loss::cross_entropy:
            for (std::size_t k = 0; k < d; ++k) {
                const double p = tr.out[k];
                if (p > kCeClamp && p < 1.0) dout[k] = -y[k] / p * inv_batch;
            }
            break;
        case Loss::mse:
            for (std::size_t k = 0; k < d; ++k) dout[k] = 2.0 * (tr.out[k] - y[k]) * inv_batch;
            break;
        case Loss::mae:
            for (std::size_t k = 0; k < d; ++k) {
                const double diff = tr.out[k] - y[k];
                dout[k] = (diff > 0 ? 1.0 : (diff < 0 ? -1.0 : 0.0)) * inv_batch;
            }
            break;
    }
    if (!net.classifier_softmax) return dout;
    // Generic softmax Jacobian: delta_j = p_j (dout_j - sum_k dout_k p_k)
    double dot = 0.0;
    for (std::size_t k = 0; k < d; ++k) dot += dout[k] * tr.out[k];
    for (std::size_t j = 0; j < d; ++j) delta[j] = tr.out[j] * (dout[j] - dot);
    return delta;
}

}  // namespace detail

/// Accumulates gradients of the batch-mean loss over all trainable
/// parameters. Masked weight positions report gradient exactly 0.
inline Gradients backward(const MaskedNetwork& net, const std::vector<Vec>& xs, const std::vector<Vec>& ys,
                          Loss kind) {
    if (xs.empty() || xs.size() != ys.size()) throw std::invalid_argument("backward: bad batch");
    Gradients g = zero_gradients(net);
    const int n_layers = net.lay.depth + 1;
    const double inv_batch = 1.0 / static_cast<double>(xs.size());

    for (std::size_t sample = 0; sample < xs.size(); ++sample) {
        const ForwardTrace tr = forward_trace(net, xs[sample]);
        Vec delta_out = detail::output_delta(net, kind, tr, ys[sample], inv_batch);

        Vec delta_sink;
        if (net.exit_identity) {
            delta_sink = delta_out;
        } else {
            outer_acc(g.W_exit, delta_out, tr.sink_h);
            for (std::size_t k = 0; k < delta_out.size(); ++k) g.b_exit[k] += delta_out[k];
            delta_sink.assign(net.sink_dim, 0.0);
            matTvec_acc(net.W_exit, delta_out, delta_sink);
        }

        std::vector<Vec> dh(n_layers);
        for (int l = 0; l < n_layers; ++l) dh[l].assign(net.layer_size[l], 0.0);
        int cursor = 0;
        for (int v : net.sink_vertices) {
            const int l = net.lay.layer_of[v];
            for (int i = 0; i < net.block_size[v]; ++i) dh[l][net.block_offset[v] + i] += delta_sink[cursor++];
        }

        for (int l = n_layers - 1; l >= 1; --l) {
            Vec dact(net.layer_size[l], 0.0);
            for (int i = 0; i < net.layer_size[l]; ++i) {
                const bool id_here = net.squash_replaced && net.is_sink_neuron(l, i);
                const double deriv =
                    id_here ? 1.0
                            : detail::act_derivative(net.act, net.leaky_beta, tr.z_act_in[l][i], tr.h[l][i]);
                dact[i] = dh[l][i] * deriv;
            }
            Vec dz;
            if (net.layer_norm) {
                const int h_n = net.layer_size[l];
                Vec dzhat(h_n, 0.0);
                for (int i = 0; i < h_n; ++i) {
                    g.gamma[l][i] += dact[i] * tr.z_hat[l][i];
                    g.beta[l][i] += dact[i];
                    dzhat[i] = dact[i] * net.norm_gamma[l][i];
                }
                double mean_d = 0.0, mean_dz = 0.0;
                for (int i = 0; i < h_n; ++i) {
                    mean_d += dzhat[i];
                    mean_dz += dzhat[i] * tr.z_hat[l][i];
                }
                mean_d /= h_n;
                mean_dz /= h_n;
                dz.assign(h_n, 0.0);
                for (int i = 0; i < h_n; ++i)
                    dz[i] = (dzhat[i] - mean_d - tr.z_hat[l][i] * mean_dz) / tr.sd[l];
            } else {
                dz = std::move(dact);
            }
            for (std::size_t k = 0; k < dz.size(); ++k) g.bias[l][k] += dz[k];
            for (int s = 0; s < l; ++s) {
                auto it = net.W.find({s, l});
                if (it == net.W.end()) continue;
                outer_acc(g.W.at({s, l}), dz, tr.h[s]);
                matTvec_acc(it->second, dz, dh[s]);
            }
        }

        if (!net.entry_identity && net.entry_trainable) {
            outer_acc(g.W_entry, dh[0], xs[sample]);
            for (std::size_t k = 0; k < dh[0].size(); ++k) g.b_entry[k] += dh[0][k];
        }
    }

    // Masked coordinates carry gradient 0 by contract.
    for (auto& [key, gw] : g.W) {
        const Mat& m = net.M.at(key);
        for (std::size_t i = 0; i < gw.a.size(); ++i)
            if (m.a[i] == 0.0) gw.a[i] = 0.0;
    }
    return g;
}

/// theta <- theta - eta * g on unmasked parameters; masked weights are never
/// touched and therefore stay bit-exact zero.
inline void sgd_step(MaskedNetwork& net, const Gradients& g, double eta) {
    for (auto& [key, w] : net.W) {
        const Mat& m = net.M.at(key);
        auto it = g.W.find(key);
        if (it == g.W.end()) continue;
        for (std::size_t i = 0; i < w.a.size(); ++i)
            if (m.a[i] != 0.0) w.a[i] -= eta * it->second.a[i];
    }
    for (std::size_t l = 1; l < net.bias.size(); ++l)
        for (std::size_t k = 0; k < net.bias[l].size(); ++k) net.bias[l][k] -= eta * g.bias[l][k];
    if (!net.entry_identity && net.entry_trainable) {
        for (std::size_t i = 0; i < net.W_entry.a.size(); ++i) net.W_entry.a[i] -= eta * g.W_entry.a[i];
        for (std::size_t k = 0; k < net.b_entry.size(); ++k) net.b_entry[k] -= eta * g.b_entry[k];
    }
    if (!net.exit_identity) {
        for (std::size_t i = 0; i < net.W_exit.a.size(); ++i) net.W_exit.a[i] -= eta * g.W_exit.a[i];
        for (std::size_t k = 0; k < net.b_exit.size(); ++k) net.b_exit[k] -= eta * g.b_exit[k];
    }
    if (net.layer_norm) {
        for (std::size_t l = 1; l < net.norm_gamma.size(); ++l) {
            for (std::size_t k = 0; k < net.norm_gamma[l].size(); ++k) {
                net.norm_gamma[l][k] -= eta * g.gamma[l][k];
                net.norm_beta[l][k] -= eta * g.beta[l][k];
            }
        }
    }
}

struct TrainScheme {
    double learning_rate = 0.1;
    int batch_size = 32;
    int epochs = 10;
    Loss loss = Loss::cross_entropy;
    std::uint64_t seed = 0;
};

/// Minibatch SGD with deterministic per-epoch shuffling derived from the
/// scheme seed. Returns the per-epoch mean training loss.
inline std::vector<double> train(MaskedNetwork& net, const std::vector<Vec>& xs, const std::vector<Vec>& ys,
                                 const TrainScheme& scheme) {
    if (xs.empty() || xs.size() != ys.size()) throw std::invalid_argument("train: empty or mismatched dataset");
    if (scheme.learning_rate <= 0 || scheme.batch_size < 1 || scheme.epochs < 1)
        throw std::invalid_argument("train: scheme values must be positive");
    std::vector<double> history;
    history.reserve(scheme.epochs);
    const std::size_t n = xs.size();
    std::vector<int> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(i);

    for (int epoch = 0; epoch < scheme.epochs; ++epoch) {
        Rng rng(hash_seed(scheme.seed, static_cast<std::uint64_t>(epoch)));
        rng.shuffle(idx);
        double epoch_loss = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < n; start += scheme.batch_size) {
            const std::size_t end = std::min(n, start + scheme.batch_size);
            std::vector<Vec> bx, by;
            bx.reserve(end - start);
            by.reserve(end - start);
            for (std::size_t i = start; i < end; ++i) {
                bx.push_back(xs[idx[i]]);
                by.push_back(ys[idx[i]]);
            }
            const Gradients g = backward(net, bx, by, scheme.loss);
            sgd_step(net, g, scheme.learning_rate);
            std::vector<Vec> preds;
            preds.reserve(bx.size());
            for (auto& x : bx) preds.push_back(forward(net, x));
            epoch_loss += loss_value(scheme.loss, preds, by);
            ++batches;
        }
        history.push_back(epoch_loss / static_cast<double>(batches));
    }
    return history;
}

inline Vec one_hot(int label, int classes) {
    Vec y(classes, 0.0);
    y[label] = 1.0;
    return y;
}

}  // namespace gin
