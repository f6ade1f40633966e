#pragma once

// Classifier evaluation (confusion matrix, accuracy, per-class
// precision/recall/F1) and the regression diagnostics R^2, Pearson and
// Spearman correlation.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gin/net.hpp"
#include "gin/spheres.hpp"
#include "gin/train.hpp"

namespace gin {

struct ConfusionMatrix {
    int classes = 0;
    std::vector<std::vector<long long>> counts;  // rows actual, columns predicted

    explicit ConfusionMatrix(int c = 0) : classes(c), counts(c, std::vector<long long>(c, 0)) {}

    long long total() const {
        long long t = 0;
        for (auto& row : counts)
            for (long long v : row) t += v;
        return t;
    }
};

struct EvalMetrics {
    ConfusionMatrix confusion;
    double accuracy = 0.0;
    std::vector<double> precision, recall, f1;  // per class, 0/0 -> 0
    double macro_f1 = 0.0;
    double mean_loss = 0.0;  // loss of the evaluation predictions
};

inline int argmax(const Vec& v) {
    return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

inline EvalMetrics metrics_from_confusion(ConfusionMatrix cm) {
    EvalMetrics m;
    const int c = cm.classes;
    m.precision.assign(c, 0.0);
    m.recall.assign(c, 0.0);
    m.f1.assign(c, 0.0);
    long long correct = 0;
    for (int k = 0; k < c; ++k) correct += cm.counts[k][k];
    const long long total = cm.total();
    m.accuracy = total > 0 ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
    for (int k = 0; k < c; ++k) {
        long long tp = cm.counts[k][k], fp = 0, fn = 0;
        for (int j = 0; j < c; ++j) {
            if (j == k) continue;
            fp += cm.counts[j][k];
            fn += cm.counts[k][j];
        }
        m.precision[k] = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
        m.recall[k] = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
        m.f1[k] = (m.precision[k] + m.recall[k]) > 0
                      ? 2.0 * m.precision[k] * m.recall[k] / (m.precision[k] + m.recall[k])
                      : 0.0;
        m.macro_f1 += m.f1[k];
    }
    if (c > 0) m.macro_f1 /= c;
    m.confusion = std::move(cm);
    return m;
}

/// Argmax decision rule over the network outputs.
inline EvalMetrics evaluate(const MaskedNetwork& net, const std::vector<Sample>& eval_set,
                            Loss loss_kind = Loss::cross_entropy) {
    if (eval_set.empty()) throw std::invalid_argument("evaluate: empty evaluation set");
    const int c = net.spec.output_dim;
    ConfusionMatrix cm(c);
    std::vector<Vec> preds, targets;
    preds.reserve(eval_set.size());
    targets.reserve(eval_set.size());
    for (const auto& s : eval_set) {
        Vec out = forward(net, s.x);
        cm.counts[s.y][argmax(out)] += 1;
        preds.push_back(std::move(out));
        targets.push_back(one_hot(s.y, c));
    }
    EvalMetrics m = metrics_from_confusion(std::move(cm));
    m.mean_loss = loss_value(loss_kind, preds, targets);
    return m;
}

/// Coefficient of determination 1 - RSS/TSS.
inline double r_squared(const std::vector<double>& actual, const std::vector<double>& predicted) {
    if (actual.size() != predicted.size() || actual.empty())
        throw std::invalid_argument("r_squared: size mismatch");
    double mean = 0.0;
    for (double y : actual) mean += y;
    mean /= static_cast<double>(actual.size());
    double rss = 0.0, tss = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        rss += (actual[i] - predicted[i]) * (actual[i] - predicted[i]);
        tss += (actual[i] - mean) * (actual[i] - mean);
    }
    if (tss == 0.0) return rss == 0.0 ? 1.0 : 0.0;
    return 1.0 - rss / tss;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty()) throw std::invalid_argument("pearson: size mismatch");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        cov += (x[i] - mx) * (y[i] - my);
        vx += (x[i] - mx) * (x[i] - mx);
        vy += (y[i] - my) * (y[i] - my);
    }
    if (vx == 0.0 || vy == 0.0) return 0.0;
    return cov / std::sqrt(vx * vy);
}

/// Average ranks with ties sharing the mean rank.
inline std::vector<double> ranks(const std::vector<double>& x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> r(x.size(), 0.0);
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
        i = j + 1;
    }
    return r;
}

/// Spearman rank correlation: Pearson over average ranks.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    return pearson(ranks(x), ranks(y));
}

}  // namespace gin
