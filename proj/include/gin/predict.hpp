#pragma once

// Structural performance prediction: ordinary least squares from the fixed
// structural feature set to a score, with held-out diagnostics.

#include <stdexcept>
#include <string>
#include <vector>

#include "gin/graph_metrics.hpp"
#include "gin/matrix.hpp"
#include "gin/metrics.hpp"
#include "gin/rng.hpp"

namespace gin {

struct LinearModel {
    std::vector<std::string> feature_order;
    std::vector<double> coefficients;  // aligned with feature_order
    double intercept = 0.0;
    // Standardization applied before the solve (constant columns get scale 0
    // and a zero coefficient).
    std::vector<double> feature_mean, feature_scale;

    double predict(const std::vector<double>& features) const {
        double y = intercept;
        for (std::size_t k = 0; k < coefficients.size(); ++k) {
            if (feature_scale[k] == 0.0) continue;
            y += coefficients[k] * (features[k] - feature_mean[k]) / feature_scale[k];
        }
        return y;
    }
};

struct PredictorDiagnostics {
    double r2 = 0.0;
    double pearson = 0.0;
    double spearman = 0.0;
    bool rank_deficient = false;
    std::size_t train_count = 0;
    std::size_t test_count = 0;
};

struct FittedPredictor {
    LinearModel model;
    PredictorDiagnostics diagnostics;
};

/// OLS on standardized features with a 70/30 seeded holdout. The feature
/// set is frequently collinear (e.g. hidden = vertices - sources - sinks),
/// so the normal equations are solved through an eigenvalue pseudo-inverse;
/// dropped directions set the rank_deficient warning.
inline FittedPredictor fit_predictor(const std::vector<std::vector<double>>& features,
                                     const std::vector<double>& scores, std::uint64_t seed = 0,
                                     double holdout_fraction = 0.3) {
    const std::size_t n = features.size();
    if (n != scores.size()) throw std::invalid_argument("fit_predictor: feature/score size mismatch");
    const std::size_t d = feature_names().size();
    for (auto& f : features)
        if (f.size() != d) throw std::invalid_argument("fit_predictor: wrong feature dimension");
    if (n < d + 2) throw std::invalid_argument("fit_predictor: need at least feature_count + 2 records");

    std::vector<int> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(i);
    Rng rng(seed);
    rng.shuffle(idx);
    const std::size_t n_test = static_cast<std::size_t>(holdout_fraction * static_cast<double>(n));
    const std::size_t n_train = n - n_test;

    FittedPredictor fit;
    fit.model.feature_order = feature_names();
    fit.model.feature_mean.assign(d, 0.0);
    fit.model.feature_scale.assign(d, 0.0);

    for (std::size_t k = 0; k < d; ++k) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n_train; ++i) mean += features[idx[i]][k];
        mean /= static_cast<double>(n_train);
        double var = 0.0;
        for (std::size_t i = 0; i < n_train; ++i) {
            const double dx = features[idx[i]][k] - mean;
            var += dx * dx;
        }
        var /= static_cast<double>(n_train);
        fit.model.feature_mean[k] = mean;
        fit.model.feature_scale[k] = var > 0.0 ? std::sqrt(var) : 0.0;
    }

    auto standardized = [&](std::size_t record, std::size_t k) {
        if (fit.model.feature_scale[k] == 0.0) return 0.0;
        return (features[record][k] - fit.model.feature_mean[k]) / fit.model.feature_scale[k];
    };

    // Normal equations with an intercept column appended last.
    const std::size_t dim = d + 1;
    Mat xtx(static_cast<int>(dim), static_cast<int>(dim));
    Vec xty(dim, 0.0);
    for (std::size_t i = 0; i < n_train; ++i) {
        std::vector<double> row(dim, 1.0);
        for (std::size_t k = 0; k < d; ++k) row[k] = standardized(idx[i], k);
        for (std::size_t a = 0; a < dim; ++a) {
            xty[a] += row[a] * scores[idx[i]];
            for (std::size_t b = 0; b < dim; ++b) xtx(static_cast<int>(a), static_cast<int>(b)) += row[a] * row[b];
        }
    }
    bool rank_deficient = false;
    const Vec beta = pinv_solve(xtx, xty, rank_deficient);
    fit.model.coefficients.assign(beta.begin(), beta.begin() + static_cast<long>(d));
    fit.model.intercept = beta[d];
    fit.diagnostics.rank_deficient = rank_deficient;
    fit.diagnostics.train_count = n_train;
    fit.diagnostics.test_count = n_test;

    std::vector<double> actual, predicted;
    for (std::size_t i = n_train; i < n; ++i) {
        actual.push_back(scores[idx[i]]);
        predicted.push_back(fit.model.predict(features[idx[i]]));
    }
    if (!actual.empty()) {
        fit.diagnostics.r2 = r_squared(actual, predicted);
        fit.diagnostics.pearson = pearson(actual, predicted);
        fit.diagnostics.spearman = spearman(actual, predicted);
    }
    return fit;
}

inline FittedPredictor fit_predictor_graphs(const std::vector<Dag>& graphs,
                                            const std::vector<double>& scores, std::uint64_t seed = 0) {
    std::vector<std::vector<double>> feats;
    feats.reserve(graphs.size());
    for (auto& g : graphs) feats.push_back(structural_features(g).ordered());
    return fit_predictor(feats, scores, seed);
}

}  // namespace gin
