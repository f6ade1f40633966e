#pragma once

// Attribution, candidate selection, mask-level pruning with optional
// rewiring, and the scheduled train-prune loop.
//
// Units are built over the live mask at a chosen granularity. A unit's
// member coordinates (the attribution set) are its incoming live weights;
// removing a neuron- or block-unit additionally masks its outgoing
// weights, which is what the rewiring step compensates for.

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gin/metrics.hpp"
#include "gin/net.hpp"
#include "gin/rng.hpp"
#include "gin/shapley.hpp"
#include "gin/train.hpp"

namespace gin {

enum class Granularity { weight, neuron, block };

inline Granularity granularity_from_string(const std::string& s) {
    if (s == "weight") return Granularity::weight;
    if (s == "neuron") return Granularity::neuron;
    if (s == "block") return Granularity::block;
    throw std::invalid_argument("unknown granularity: " + s);
}

struct ParamCoord {
    int s = 0, l = 0;    // layer pair of the weight matrix
    int row = 0, col = 0;
};

struct PruneUnit {
    int id = 0;
    Granularity granularity = Granularity::weight;
    std::vector<ParamCoord> members;  // attribution coordinates (incoming)
    std::vector<ParamCoord> removal;  // coordinates masked when pruned
    int layer = 0;                    // scope bucket (layer of the unit's target)
    int neuron_layer = -1, neuron_index = -1;  // for neuron units
    int vertex = -1;                           // for block units
};

namespace detail {

inline bool coord_live(const MaskedNetwork& net, const ParamCoord& c) {
    auto it = net.M.find({c.s, c.l});
    return it != net.M.end() && it->second(c.row, c.col) != 0.0;
}

}  // namespace detail

/// Units over the currently live mask. Weight units are single live
/// coordinates; neuron units cover every non-source neuron with live
/// incoming weights; block units cover every non-source graph vertex with
/// any live incoming weight.
inline std::vector<PruneUnit> units_for(const MaskedNetwork& net, Granularity granularity) {
    std::vector<PruneUnit> units;
    int next_id = 0;
    auto live_in_coords = [&](int layer, int index) {
        std::vector<ParamCoord> coords;
        for (auto& [key, m] : net.M) {
            if (key.second != layer) continue;
            for (int j = 0; j < m.cols; ++j)
                if (m(index, j) != 0.0) coords.push_back({key.first, key.second, index, j});
        }
        return coords;
    };
    auto live_out_coords = [&](int layer, int index) {
        std::vector<ParamCoord> coords;
        for (auto& [key, m] : net.M) {
            if (key.first != layer) continue;
            for (int i = 0; i < m.rows; ++i)
                if (m(i, index) != 0.0) coords.push_back({key.first, key.second, i, index});
        }
        return coords;
    };

    switch (granularity) {
        case Granularity::weight: {
            for (auto& [key, m] : net.M) {
                for (int i = 0; i < m.rows; ++i)
                    for (int j = 0; j < m.cols; ++j)
                        if (m(i, j) != 0.0) {
                            PruneUnit u;
                            u.id = next_id++;
                            u.granularity = granularity;
                            u.members = {{key.first, key.second, i, j}};
                            u.removal = u.members;
                            u.layer = key.second;
                            units.push_back(std::move(u));
                        }
            }
            break;
        }
        case Granularity::neuron: {
            for (int l = 1; l <= net.lay.depth; ++l) {
                for (int i = 0; i < net.layer_size[l]; ++i) {
                    auto in = live_in_coords(l, i);
                    if (in.empty()) continue;
                    PruneUnit u;
                    u.id = next_id++;
                    u.granularity = granularity;
                    u.members = in;
                    u.removal = in;
                    auto out = live_out_coords(l, i);
                    u.removal.insert(u.removal.end(), out.begin(), out.end());
                    u.layer = l;
                    u.neuron_layer = l;
                    u.neuron_index = i;
                    units.push_back(std::move(u));
                }
            }
            // The last layer's neurons are covered by the loop above, too;
            // sink neurons in intermediate layers also qualify.
            break;
        }
        case Granularity::block: {
            for (int v = 0; v < net.graph.order(); ++v) {
                const int l = net.lay.layer_of[v];
                if (l == 0) continue;  // source blocks carry the input
                std::vector<ParamCoord> in, out;
                for (int i = 0; i < net.block_size[v]; ++i) {
                    auto ci = live_in_coords(l, net.block_offset[v] + i);
                    in.insert(in.end(), ci.begin(), ci.end());
                    auto co = live_out_coords(l, net.block_offset[v] + i);
                    out.insert(out.end(), co.begin(), co.end());
                }
                if (in.empty()) continue;
                PruneUnit u;
                u.id = next_id++;
                u.granularity = granularity;
                u.members = in;
                u.removal = in;
                u.removal.insert(u.removal.end(), out.begin(), out.end());
                u.layer = l;
                u.vertex = v;
                units.push_back(std::move(u));
            }
            break;
        }
    }
    return units;
}

enum class Criterion { random, magnitude_l1, shapley };

inline Criterion criterion_from_string(const std::string& s) {
    if (s == "random") return Criterion::random;
    if (s == "magnitude" || s == "magnitude_l1") return Criterion::magnitude_l1;
    if (s == "shapley") return Criterion::shapley;
    throw std::invalid_argument("unknown criterion: " + s);
}

enum class ShapleySolverKind { exact, permutation_mc, subset_mc, stratified, svarm };

struct AttributionContext {
    const std::vector<Sample>* eval_data = nullptr;  // payoff data for shapley
    std::uint64_t seed = 0;
    ShapleySolverKind solver = ShapleySolverKind::exact;
    std::size_t budget = 2000;
};

namespace detail {

inline void mask_coords(MaskedNetwork& net, const std::vector<ParamCoord>& coords) {
    for (const auto& c : coords) {
        auto it = net.M.find({c.s, c.l});
        if (it == net.M.end()) continue;
        it->second(c.row, c.col) = 0.0;
        net.W.at({c.s, c.l})(c.row, c.col) = 0.0;
    }
}

}  // namespace detail

/// Scores every unit. The shapley criterion plays a coalitional game whose
/// payoff is the validation accuracy of the net with all units outside the
/// coalition masked (no per-coalition retraining).
inline std::map<int, double> attribute(const MaskedNetwork& net, const std::vector<PruneUnit>& units,
                                       Criterion criterion, const AttributionContext& ctx) {
    if (units.empty()) throw std::invalid_argument("attribute: no units");
    std::map<int, double> scores;
    switch (criterion) {
        case Criterion::random: {
            Rng rng(ctx.seed);
            for (const auto& u : units) scores[u.id] = rng.uniform();
            break;
        }
        case Criterion::magnitude_l1: {
            for (const auto& u : units) {
                double s = 0.0;
                for (const auto& c : u.members) s += std::abs(net.W.at({c.s, c.l})(c.row, c.col));
                scores[u.id] = s;
            }
            break;
        }
        case Criterion::shapley: {
            if (!ctx.eval_data) throw std::invalid_argument("attribute: shapley needs evaluation data");
            std::vector<std::string> player_ids;
            player_ids.reserve(units.size());
            for (const auto& u : units) player_ids.push_back("u" + std::to_string(u.id));
            CoalitionalGame game(player_ids, [&](std::uint64_t mask) {
                MaskedNetwork overlay = net;
                for (std::size_t k = 0; k < units.size(); ++k)
                    if (!(mask & (1ULL << k))) detail::mask_coords(overlay, units[k].removal);
                return evaluate(overlay, *ctx.eval_data).accuracy;
            });
            Rng rng(ctx.seed);
            ShapleyResult res;
            switch (ctx.solver) {
                case ShapleySolverKind::exact: res = shapley_exact(game); break;
                case ShapleySolverKind::permutation_mc:
                    res = shapley_permutation_mc(game, ctx.budget, rng);
                    break;
                case ShapleySolverKind::subset_mc: res = shapley_subset_mc(game, ctx.budget, rng); break;
                case ShapleySolverKind::stratified:
                    res = shapley_stratified(game, ctx.budget, 0.05, rng);
                    break;
                case ShapleySolverKind::svarm: res = shapley_svarm(game, ctx.budget, rng); break;
            }
            for (std::size_t k = 0; k < units.size(); ++k)
                scores[units[k].id] = res.at(player_ids[k]);
            break;
        }
    }
    return scores;
}

struct Amount {
    enum class Kind { fixed, percentage, bucket };
    Kind kind = Kind::fixed;
    double value = 1;
};

enum class Scope { global, per_layer };

/// Lowest-scored units first (ties by ascending unit id). fixed-k takes k
/// units, percentage floor(p*|units|), bucket fills until the cumulative
/// score first reaches the threshold (inclusive). Per-layer scope applies
/// the rule independently within each layer.
inline std::vector<int> select_candidates(const std::map<int, double>& scores,
                                          const std::vector<PruneUnit>& units, Amount amount,
                                          Scope scope = Scope::global) {
    if (scores.empty()) throw std::invalid_argument("select_candidates: no scores");
    std::map<int, std::vector<std::pair<double, int>>> by_layer;
    for (const auto& u : units) {
        auto it = scores.find(u.id);
        if (it == scores.end()) throw std::invalid_argument("select_candidates: unscored unit");
        const int bucket = scope == Scope::per_layer ? u.layer : 0;
        by_layer[bucket].emplace_back(it->second, u.id);
    }
    std::vector<int> chosen;
    for (auto& [layer, entries] : by_layer) {
        (void)layer;
        std::sort(entries.begin(), entries.end());
        std::size_t take = 0;
        switch (amount.kind) {
            case Amount::Kind::fixed:
                if (static_cast<std::size_t>(amount.value) > entries.size())
                    throw std::invalid_argument("select_candidates: k exceeds unit count");
                take = static_cast<std::size_t>(amount.value);
                break;
            case Amount::Kind::percentage:
                take = static_cast<std::size_t>(amount.value * static_cast<double>(entries.size()));
                break;
            case Amount::Kind::bucket: {
                double cum = 0.0;
                while (take < entries.size() && cum < amount.value) cum += entries[take++].first;
                break;
            }
        }
        for (std::size_t i = 0; i < take; ++i) chosen.push_back(entries[i].second);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

struct PruneOutcome {
    int pruned = 0;
    int already_dead = 0;  // no-op units, reported as a warning count
};

/// Masks the candidates' removal coordinates. With rewiring, each removed
/// neuron's live predecessors and successors gain an unmasked connection
/// initialized to exactly 0, so the pruned net's outputs are unchanged at
/// the pruning instant.
inline PruneOutcome prune(MaskedNetwork& net, const std::vector<PruneUnit>& units,
                          const std::vector<int>& candidate_ids, bool rewire = false) {
    PruneOutcome outcome;
    std::map<int, const PruneUnit*> by_id;
    for (const auto& u : units) by_id[u.id] = &u;
    for (int id : candidate_ids) {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw std::invalid_argument("prune: unknown unit id");
        const PruneUnit& u = *it->second;
        bool any_live = false;
        for (const auto& c : u.removal) any_live = any_live || detail::coord_live(net, c);
        if (!any_live) {
            ++outcome.already_dead;
            continue;
        }

        std::vector<std::pair<int, int>> preds, succs;  // (layer, index)
        if (rewire && u.granularity == Granularity::neuron) {
            for (auto& [key, m] : net.M) {
                if (key.second == u.neuron_layer)
                    for (int j = 0; j < m.cols; ++j)
                        if (m(u.neuron_index, j) != 0.0) preds.emplace_back(key.first, j);
                if (key.first == u.neuron_layer)
                    for (int i = 0; i < m.rows; ++i)
                        if (m(i, u.neuron_index) != 0.0) succs.emplace_back(key.second, i);
            }
        }

        detail::mask_coords(net, u.removal);
        ++outcome.pruned;

        for (auto [ls, j] : preds) {
            for (auto [ll, i] : succs) {
                if (ls >= ll) continue;
                auto key = std::make_pair(ls, ll);
                auto wit = net.W.find(key);
                if (wit == net.W.end()) {
                    net.W.emplace(key, Mat(net.layer_size[ll], net.layer_size[ls]));
                    net.M.emplace(key, Mat(net.layer_size[ll], net.layer_size[ls]));
                    wit = net.W.find(key);
                }
                Mat& mask = net.M.at(key);
                if (mask(i, j) == 0.0) {
                    mask(i, j) = 1.0;
                    wit->second(i, j) = 0.0;
                    ++net.prunable_capacity;
                }
            }
        }
    }
    return outcome;
}

struct Stopping {
    enum class Kind { target_sparsity, fixed_steps, empty_candidates, full_bucket, performance_threshold };
    Kind kind = Kind::fixed_steps;
    double value = 1;
};

struct PruneConfig {
    Granularity granularity = Granularity::weight;
    Criterion criterion = Criterion::magnitude_l1;
    AttributionContext attribution;
    Amount amount;
    Scope scope = Scope::global;
    Stopping stopping;
    int retrain_epochs = 0;
    bool rewire = false;
};

struct ScheduleRecord {
    int step = 0;
    double sparsity = 0.0;
    double accuracy = 0.0;
    double macro_f1 = 0.0;
    double loss = 0.0;
};

/// attribute -> select -> prune -> retrain until the stopping rule fires.
/// Record 0 is the pre-pruning state; one record follows per step.
inline std::vector<ScheduleRecord> run_schedule(MaskedNetwork& net, const std::vector<Sample>& train_set,
                                                const std::vector<Sample>& eval_set, PruneConfig config,
                                                TrainScheme scheme) {
    std::vector<ScheduleRecord> history;
    auto record = [&](int step) {
        const EvalMetrics m = evaluate(net, eval_set);
        history.push_back({step, sparsity(net), m.accuracy, m.macro_f1, m.mean_loss});
    };
    record(0);

    std::vector<Vec> xs, ys;
    for (const auto& s : train_set) {
        xs.push_back(s.x);
        ys.push_back(one_hot(s.y, net.spec.output_dim));
    }

    double bucket_filled = 0.0;
    for (int step = 1;; ++step) {
        if (config.stopping.kind == Stopping::Kind::fixed_steps &&
            step > static_cast<int>(config.stopping.value))
            break;
        auto units = units_for(net, config.granularity);
        if (units.empty()) break;
        config.attribution.seed = hash_seed(config.attribution.seed, static_cast<std::uint64_t>(step));
        std::map<int, double> scores;
        try {
            scores = attribute(net, units, config.criterion, config.attribution);
        } catch (const std::invalid_argument&) {
            break;
        }
        std::vector<int> candidates;
        try {
            candidates = select_candidates(scores, units, config.amount, config.scope);
        } catch (const std::invalid_argument&) {
            break;  // fewer live units than k: nothing selectable
        }
        if (candidates.empty()) break;
        for (int id : candidates) bucket_filled += scores.at(id);
        prune(net, units, candidates, config.rewire);
        if (config.retrain_epochs > 0) {
            TrainScheme retrain = scheme;
            retrain.epochs = config.retrain_epochs;
            retrain.seed = hash_seed(scheme.seed, static_cast<std::uint64_t>(step));
            train(net, xs, ys, retrain);
        }
        record(step);

        const ScheduleRecord& last = history.back();
        bool stop = false;
        switch (config.stopping.kind) {
            case Stopping::Kind::target_sparsity: stop = last.sparsity >= config.stopping.value; break;
            case Stopping::Kind::fixed_steps: stop = step >= static_cast<int>(config.stopping.value); break;
            case Stopping::Kind::empty_candidates: stop = false; break;  // loop exits when none left
            case Stopping::Kind::full_bucket: stop = bucket_filled >= config.stopping.value; break;
            case Stopping::Kind::performance_threshold: stop = last.accuracy < config.stopping.value; break;
        }
        if (stop) break;
    }
    return history;
}

}  // namespace gin
