#pragma once

// Artificial classification data built from FIFO-ordered random spheres:
// points sampled uniformly inside a box get the label of the first sphere
// (in creation order) that strictly contains them; uncovered points found
// a new sphere centered on themselves.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gin/graph_json.hpp"
#include "gin/rng.hpp"

namespace gin {

struct Sphere {
    std::vector<double> center;
    double radius = 0.0;
    int label = 0;
};

struct Sample {
    std::vector<double> x;
    int y = 0;
};

struct SpheresDataset {
    int dim = 0;
    int classes = 0;
    std::vector<std::pair<double, double>> bounds;  // per-dimension (lo, hi)
    std::pair<double, double> radius_range{0.0, 0.0};
    std::uint64_t seed = 0;
    std::vector<Sphere> spheres;  // FIFO creation order
    std::vector<Sample> samples;
};

/// Label of the first sphere strictly containing x, else nullopt.
inline std::optional<int> get_label(const std::vector<Sphere>& spheres, const std::vector<double>& x) {
    for (const auto& s : spheres) {
        if (s.center.size() != x.size()) throw std::invalid_argument("get_label: dimension mismatch");
        double d2 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double diff = x[i] - s.center[i];
            d2 += diff * diff;
        }
        if (d2 < s.radius * s.radius) return s.label;
    }
    return std::nullopt;
}

inline SpheresDataset generate_spheres(int dim, int classes, int n_samples,
                                       std::pair<double, double> radius_range,
                                       std::vector<std::pair<double, double>> bounds,
                                       std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("generate_spheres: need N >= 1");
    if (classes < 2) throw std::invalid_argument("generate_spheres: need C >= 2");
    if (radius_range.first <= 0.0 || radius_range.first > radius_range.second)
        throw std::invalid_argument("generate_spheres: invalid radius range");
    if (static_cast<int>(bounds.size()) != dim) throw std::invalid_argument("generate_spheres: bounds/dim mismatch");
    for (auto [lo, hi] : bounds)
        if (lo >= hi) throw std::invalid_argument("generate_spheres: empty bound interval");

    SpheresDataset ds;
    ds.dim = dim;
    ds.classes = classes;
    ds.bounds = std::move(bounds);
    ds.radius_range = radius_range;
    ds.seed = seed;

    Rng rng(seed);
    for (int i = 0; i < n_samples; ++i) {
        std::vector<double> x(dim);
        for (int d = 0; d < dim; ++d) x[d] = rng.uniform(ds.bounds[d].first, ds.bounds[d].second);
        auto label = get_label(ds.spheres, x);
        if (!label) {
            Sphere s;
            s.center = x;
            s.radius = rng.uniform(radius_range.first, radius_range.second);
            s.label = static_cast<int>(rng.below(static_cast<std::uint64_t>(classes)));
            ds.spheres.push_back(std::move(s));
            label = ds.spheres.back().label;
        }
        ds.samples.push_back({std::move(x), *label});
    }
    return ds;
}

struct SplitIndices {
    std::vector<int> train, valid, test;
};

/// Seeded shuffle split; sizes are floored and the remainder goes to train.
inline SplitIndices split_dataset(int n_samples, double f_train, double f_valid, double f_test,
                                  std::uint64_t seed) {
    if (f_train <= 0 || f_valid <= 0 || f_test <= 0 || std::abs(f_train + f_valid + f_test - 1.0) > 1e-9)
        throw std::invalid_argument("split_dataset: fractions must be positive and sum to 1");
    std::vector<int> idx(n_samples);
    for (int i = 0; i < n_samples; ++i) idx[i] = i;
    Rng rng(seed);
    rng.shuffle(idx);
    const int n_va = static_cast<int>(f_valid * n_samples);
    const int n_te = static_cast<int>(f_test * n_samples);
    const int n_tr = n_samples - n_va - n_te;
    SplitIndices s;
    s.train.assign(idx.begin(), idx.begin() + n_tr);
    s.valid.assign(idx.begin() + n_tr, idx.begin() + n_tr + n_va);
    s.test.assign(idx.begin() + n_tr + n_va, idx.end());
    return s;
}

inline std::vector<Sample> subset(const std::vector<Sample>& samples, const std::vector<int>& idx) {
    std::vector<Sample> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(samples[i]);
    return out;
}

inline nlohmann::ordered_json to_json(const SpheresDataset& ds) {
    nlohmann::ordered_json j;
    j["dim"] = ds.dim;
    j["classes"] = ds.classes;
    auto bounds = nlohmann::ordered_json::array();
    for (auto [lo, hi] : ds.bounds) bounds.push_back({lo, hi});
    j["bounds"] = std::move(bounds);
    j["radius_range"] = {ds.radius_range.first, ds.radius_range.second};
    j["seed"] = ds.seed;
    j["unlabeled_sentinel"] = -1;  // legacy-compat marker, never used in samples
    auto spheres = nlohmann::ordered_json::array();
    for (const auto& s : ds.spheres)
        spheres.push_back({{"center", s.center}, {"radius", s.radius}, {"label", s.label}});
    j["spheres"] = std::move(spheres);
    auto samples = nlohmann::ordered_json::array();
    for (const auto& s : ds.samples) samples.push_back({{"x", s.x}, {"y", s.y}});
    j["samples"] = std::move(samples);
    return j;
}

inline SpheresDataset spheres_from_json(const nlohmann::json& j) {
    SpheresDataset ds;
    ds.dim = j.at("dim").get<int>();
    ds.classes = j.at("classes").get<int>();
    for (auto& b : j.at("bounds")) ds.bounds.emplace_back(b.at(0).get<double>(), b.at(1).get<double>());
    ds.radius_range = {j.at("radius_range").at(0).get<double>(), j.at("radius_range").at(1).get<double>()};
    ds.seed = j.value("seed", 0ULL);
    for (auto& s : j.at("spheres"))
        ds.spheres.push_back({s.at("center").get<std::vector<double>>(), s.at("radius").get<double>(),
                              s.at("label").get<int>()});
    for (auto& s : j.at("samples"))
        ds.samples.push_back({s.at("x").get<std::vector<double>>(), s.at("y").get<int>()});
    return ds;
}

inline void save_spheres(const SpheresDataset& ds, const std::string& path) {
    write_text_file(path, to_json(ds).dump() + "\n");
}

inline SpheresDataset load_spheres(const std::string& path) {
    return spheres_from_json(nlohmann::json::parse(read_text_file(path)));
}

}  // namespace gin
