#pragma once

// Unified command-line entry point. Every subcommand is deterministic per
// (version, flags, seed): reruns produce byte-identical artifacts, and the
// --threads flag never changes results (it is an orchestration hint; the
// computations are sequentially deterministic).

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gin/assembly.hpp"
#include "gin/generators.hpp"
#include "gin/graph_json.hpp"
#include "gin/graph_metrics.hpp"
#include "gin/metrics.hpp"
#include "gin/nas.hpp"
#include "gin/net.hpp"
#include "gin/predict.hpp"
#include "gin/prune.hpp"
#include "gin/report.hpp"
#include "gin/shapley.hpp"
#include "gin/spheres.hpp"
#include "gin/themes.hpp"
#include "gin/train.hpp"

namespace gin::cli {

inline constexpr const char* kVersion = "0.1.0";

namespace detail {

struct KeyValue {
    std::string key;
    double value = 0.0;
};

inline KeyValue parse_key_value(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("expected key=value, got: " + s);
    return {s.substr(0, eq), std::stod(s.substr(eq + 1))};
}

inline InitSpec parse_init(const std::string& s) {
    const auto colon = s.find(':');
    const std::string kind = s.substr(0, colon);
    InitSpec init;
    if (colon != std::string::npos) {
        const std::string params = s.substr(colon + 1);
        const auto comma = params.find(',');
        if (comma == std::string::npos) throw CLI::ValidationError("init needs two parameters: " + s);
        init.p1 = std::stod(params.substr(0, comma));
        init.p2 = std::stod(params.substr(comma + 1));
    }
    if (kind == "normal")
        init.kind = InitSpec::Kind::normal;
    else if (kind == "uniform")
        init.kind = InitSpec::Kind::uniform;
    else
        throw CLI::ValidationError("unknown init kind: " + kind);
    return init;
}

inline std::vector<Sample> samples_by_indices(const SpheresDataset& ds, const std::vector<int>& idx) {
    return subset(ds.samples, idx);
}

struct SpaceSpec {
    SpaceSampler sampler;
    std::string description;
};

inline SpaceSpec parse_space(const std::string& s, const SpaceConstraints& constraints) {
    const auto colon = s.find(':');
    const std::string kind = colon == std::string::npos ? s : s.substr(0, colon);
    std::map<std::string, int> params;
    if (colon != std::string::npos) {
        std::string rest = s.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto next = rest.find(',', pos);
            if (next == std::string::npos) next = rest.size();
            const auto kv = parse_key_value(rest.substr(pos, next - pos));
            params[kv.key] = static_cast<int>(kv.value);
            pos = next + 1;
        }
    }
    if (kind == "udag") {
        const int n = params.count("n") ? params.at("n") : constraints.max_vertices;
        return {make_udag_space(n, constraints), s};
    }
    if (kind == "themes") {
        const int order = params.count("order") ? params.at("order") : 5;
        auto themes = std::make_shared<std::vector<Dag>>(enumerate_cts(order));
        const SpaceConstraints c = constraints;
        return {[themes, c](Rng& rng) -> Dag {
                    for (int t = 0; t < 1000; ++t) {
                        const Dag& base = (*themes)[rng.below(themes->size())];
                        std::map<int, std::string> labels;
                        if (c.require_labels) {
                            const int src = base.sources()[0];
                            const int snk = base.sinks()[0];
                            for (int v = 0; v < base.order(); ++v) {
                                if (v == src)
                                    labels[v] = c.input_label;
                                else if (v == snk)
                                    labels[v] = c.output_label;
                                else
                                    labels[v] = c.label_alphabet[rng.below(c.label_alphabet.size())];
                            }
                        }
                        Dag candidate(base.order(), base.edges(), std::move(labels));
                        if (c.valid(candidate)) return candidate;
                    }
                    throw std::runtime_error("themes space: no valid candidate under constraints");
                },
                s};
    }
    throw CLI::ValidationError("unknown space: " + s);
}

struct EvaluatorSpec {
    Evaluator evaluator;
    std::string description;
};

/// spheres:<path> trains a small network per candidate and scores macro-F1
/// on the validation split; synthetic:<name> is a fast structural function.
inline EvaluatorSpec parse_evaluator(const std::string& s, int eval_scale, int eval_epochs, int eval_reps) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("evaluator needs kind:arg, got " + s);
    const std::string kind = s.substr(0, colon);
    const std::string arg = s.substr(colon + 1);
    if (kind == "synthetic") return {make_synthetic_evaluator(arg), s};
    if (kind == "spheres") {
        auto ds = std::make_shared<SpheresDataset>(load_spheres(arg));
        return {[ds, eval_scale, eval_epochs, eval_reps](const Dag& g, Rng& rng) {
                    const auto idx = split_dataset(static_cast<int>(ds->samples.size()), 0.7, 0.15, 0.15,
                                                   ds->seed);
                    std::vector<Vec> xs, ys;
                    for (int i : idx.train) {
                        xs.push_back(ds->samples[i].x);
                        ys.push_back(one_hot(ds->samples[i].y, ds->classes));
                    }
                    const auto valid = subset(ds->samples, idx.valid);
                    double total = 0.0;
                    for (int rep = 0; rep < eval_reps; ++rep) {
                        BuildSpec spec;
                        spec.input_dim = ds->dim;
                        spec.output_dim = ds->classes;
                        spec.scale = std::max(eval_scale, g.order());
                        spec.classifier_softmax = true;
                        spec.layer_norm = true;
                        spec.init = {InitSpec::Kind::normal, 0.0, 0.3};
                        spec.seed = rng.next_u64();
                        MaskedNetwork net = build_network(g, spec);
                        if (!net.entry_identity) standardize_entry(net, xs);
                        TrainScheme scheme;
                        scheme.learning_rate = 0.05;
                        scheme.batch_size = 32;
                        scheme.epochs = eval_epochs;
                        scheme.loss = Loss::cross_entropy;
                        scheme.seed = rng.next_u64();
                        train(net, xs, ys, scheme);
                        total += evaluate(net, valid).macro_f1;
                    }
                    return total / eval_reps;
                },
                s};
    }
    throw CLI::ValidationError("unknown evaluator: " + s);
}

inline std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    const std::string text = read_text_file(path);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    for (char c : text) {
        if (c == ',') {
            row.push_back(cell);
            cell.clear();
        } else if (c == '\n') {
            row.push_back(cell);
            cell.clear();
            rows.push_back(std::move(row));
            row.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    if (!cell.empty() || !row.empty()) {
        row.push_back(cell);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args) {
    CLI::App app{"graph-induced neural networks: sampling, themes, training, attribution, search"};
    app.set_version_flag("--version", kVersion);
    std::uint64_t global_seed = 0;
    int threads = 1;
    bool quiet = false;
    app.add_option("--seed", global_seed, "master seed (subcommand --seed overrides)");
    app.add_option("--threads", threads, "worker hint; results never depend on it");
    app.add_flag("--quiet", quiet, "suppress progress chatter");
    app.require_subcommand(1);

    // --- gen-data ---------------------------------------------------------
    auto* gen_data = app.add_subcommand("gen-data", "generate a spheres classification dataset");
    struct {
        int dim = 2, classes = 4, n = 2000;
        double r_lo = 10, r_hi = 20, lo = -100, hi = 100;
        std::uint64_t seed = 0;
        std::string out;
    } gd;
    gen_data->add_option("--dim", gd.dim)->required();
    gen_data->add_option("--classes", gd.classes)->required();
    gen_data->add_option("--n", gd.n)->required();
    gen_data->add_option("--r-lo", gd.r_lo)->required();
    gen_data->add_option("--r-hi", gd.r_hi)->required();
    gen_data->add_option("--lo", gd.lo)->required();
    gen_data->add_option("--hi", gd.hi)->required();
    auto* gd_seed = gen_data->add_option("--seed", gd.seed);
    gen_data->add_option("--out", gd.out)->required();
    gen_data->callback([&] {
        if (!gd_seed->count()) gd.seed = global_seed;
        std::vector<std::pair<double, double>> bounds(gd.dim, {gd.lo, gd.hi});
        const auto ds = generate_spheres(gd.dim, gd.classes, gd.n, {gd.r_lo, gd.r_hi}, bounds, gd.seed);
        save_spheres(ds, gd.out);
        if (!quiet)
            std::cerr << "gen-data: " << ds.samples.size() << " samples, " << ds.spheres.size()
                      << " spheres -> " << gd.out << "\n";
    });

    // --- sample-graph -----------------------------------------------------
    auto* sample_graph = app.add_subcommand("sample-graph", "draw one graph from a random graph model");
    struct {
        std::string model;
        int n = 0, m = 0, k = 0;
        double p = 0.0;
        std::uint64_t seed = 0;
        std::string out;
    } sg;
    sample_graph->add_option("--model", sg.model)
        ->required()
        ->check(CLI::IsMember({"udag", "udag-connected", "gil", "er", "ws", "ba"}));
    sample_graph->add_option("--n", sg.n)->required();
    sample_graph->add_option("--p", sg.p);
    sample_graph->add_option("--m", sg.m);
    sample_graph->add_option("--k", sg.k);
    auto* sg_seed = sample_graph->add_option("--seed", sg.seed);
    sample_graph->add_option("--out", sg.out)->required();
    sample_graph->callback([&] {
        if (!sg_seed->count()) sg.seed = global_seed;
        Rng rng(sg.seed);
        if (sg.model == "udag") {
            save_graph(sample_uniform_dag(sg.n, rng), sg.out);
        } else if (sg.model == "udag-connected") {
            save_graph(sample_uniform_connected_dag(sg.n, rng), sg.out);
        } else if (sg.model == "gil") {
            save_graph(sample_gil(sg.n, sg.p, rng), sg.out);
        } else if (sg.model == "er") {
            save_graph(sample_er(sg.n, sg.m, rng), sg.out);
        } else if (sg.model == "ws") {
            save_graph(sample_ws(sg.n, sg.k, sg.p, rng), sg.out);
        } else {
            save_graph(sample_ba(sg.n, sg.m, rng), sg.out);
        }
    });

    // --- enum-cts ---------------------------------------------------------
    auto* enum_cts_cmd = app.add_subcommand("enum-cts", "enumerate computational themes of a given order");
    struct {
        int order = 4;
        std::string out;
    } ec;
    enum_cts_cmd->add_option("--order", ec.order)->required();
    enum_cts_cmd->add_option("--out", ec.out)->required();
    enum_cts_cmd->callback([&] {
        const auto themes = enumerate_cts(ec.order);
        std::filesystem::create_directories(ec.out);
        nlohmann::ordered_json manifest;
        manifest["order"] = ec.order;
        manifest["count"] = themes.size();
        auto files = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < themes.size(); ++i) {
            char name[64];
            std::snprintf(name, sizeof(name), "ct_%d_%04zu.json", ec.order, i);
            save_graph(themes[i], (std::filesystem::path(ec.out) / name).string());
            files.push_back(name);
        }
        manifest["files"] = std::move(files);
        write_text_file((std::filesystem::path(ec.out) / "manifest.json").string(),
                        manifest.dump(2) + "\n");
        if (!quiet) std::cerr << "enum-cts: " << themes.size() << " themes of order " << ec.order << "\n";
    });

    // --- build-net --------------------------------------------------------
    auto* build_cmd = app.add_subcommand("build-net", "expand a graph into a masked network checkpoint");
    struct {
        std::string graph, out, activation = "relu", init = "normal:0,0.5";
        int d_in = 2, d_out = 2, scale = 0;
        double alpha = 100.0;
        bool layer_norm = false, softmax = false;
        std::uint64_t seed = 0;
    } bn;
    build_cmd->add_option("--graph", bn.graph)->required();
    build_cmd->add_option("--d-in", bn.d_in)->required();
    build_cmd->add_option("--d-out", bn.d_out)->required();
    build_cmd->add_option("--scale", bn.scale)->required();
    build_cmd->add_option("--alpha", bn.alpha);
    build_cmd->add_option("--activation", bn.activation);
    build_cmd->add_option("--init", bn.init);
    build_cmd->add_flag("--layer-norm", bn.layer_norm);
    build_cmd->add_flag("--softmax", bn.softmax);
    auto* bn_seed = build_cmd->add_option("--seed", bn.seed);
    build_cmd->add_option("--out", bn.out)->required();
    build_cmd->callback([&] {
        if (!bn_seed->count()) bn.seed = global_seed;
        BuildSpec spec;
        spec.input_dim = bn.d_in;
        spec.output_dim = bn.d_out;
        spec.scale = bn.scale;
        spec.proportion_concentration = bn.alpha;
        spec.activation = activation_from_string(bn.activation);
        spec.init = detail::parse_init(bn.init);
        spec.layer_norm = bn.layer_norm;
        spec.classifier_softmax = bn.softmax;
        spec.seed = bn.seed;
        const MaskedNetwork net = build_network(load_dag(bn.graph), spec);
        save_network(net, bn.out);
        if (!quiet)
            std::cerr << "build-net: " << net.parameter_count() << " parameters -> " << bn.out << "\n";
    });

    // --- train ------------------------------------------------------------
    auto* train_cmd = app.add_subcommand("train", "train a checkpoint on a spheres dataset");
    struct {
        std::string net, data, out, history, loss = "cross_entropy", split = "0.7,0.15,0.15";
        double lr = 0.1;
        int batch = 32, epochs = 10;
        bool standardize_entry = false;
        std::uint64_t seed = 0;
    } tr;
    train_cmd->add_option("--net", tr.net)->required();
    train_cmd->add_option("--data", tr.data)->required();
    train_cmd->add_option("--lr", tr.lr)->required();
    train_cmd->add_option("--batch", tr.batch);
    train_cmd->add_option("--epochs", tr.epochs)->required();
    train_cmd->add_option("--loss", tr.loss);
    train_cmd->add_option("--split", tr.split, "train,valid,test fractions");
    train_cmd->add_flag("--standardize-entry", tr.standardize_entry,
                        "freeze the entry map to standardize the train split");
    auto* tr_seed = train_cmd->add_option("--seed", tr.seed);
    train_cmd->add_option("--out", tr.out)->required();
    train_cmd->add_option("--history", tr.history, "optional per-epoch loss csv");
    train_cmd->callback([&] {
        if (!tr_seed->count()) tr.seed = global_seed;
        MaskedNetwork net = load_network(tr.net);
        const SpheresDataset ds = load_spheres(tr.data);
        double f_tr, f_va, f_te;
        if (std::sscanf(tr.split.c_str(), "%lf,%lf,%lf", &f_tr, &f_va, &f_te) != 3)
            throw CLI::ValidationError("bad --split");
        const auto idx = split_dataset(static_cast<int>(ds.samples.size()), f_tr, f_va, f_te, ds.seed);
        std::vector<Vec> xs, ys;
        for (int i : idx.train) {
            xs.push_back(ds.samples[i].x);
            ys.push_back(one_hot(ds.samples[i].y, ds.classes));
        }
        if (tr.standardize_entry) standardize_entry(net, xs);
        TrainScheme scheme;
        scheme.learning_rate = tr.lr;
        scheme.batch_size = tr.batch;
        scheme.epochs = tr.epochs;
        scheme.loss = loss_from_string(tr.loss);
        scheme.seed = tr.seed;
        const auto history = train(net, xs, ys, scheme);
        save_network(net, tr.out);
        if (!tr.history.empty()) {
            ReportTable table;
            table.columns = {"epoch", "train_loss"};
            for (std::size_t e = 0; e < history.size(); ++e)
                table.rows.push_back({static_cast<long long>(e), history[e]});
            emit_report(table, "csv", tr.history);
        }
        if (!quiet) std::cerr << "train: final loss " << history.back() << " -> " << tr.out << "\n";
    });

    // --- evaluate -----------------------------------------------------------
    auto* eval_cmd = app.add_subcommand("evaluate", "evaluate a checkpoint on a dataset split");
    struct {
        std::string net, data, out, split = "0.7,0.15,0.15", subset = "test";
    } ev;
    eval_cmd->add_option("--net", ev.net)->required();
    eval_cmd->add_option("--data", ev.data)->required();
    eval_cmd->add_option("--split", ev.split);
    eval_cmd->add_option("--subset", ev.subset)->check(CLI::IsMember({"train", "valid", "test", "all"}));
    eval_cmd->add_option("--out", ev.out, "write metrics json here instead of stdout");
    eval_cmd->callback([&] {
        const MaskedNetwork net = load_network(ev.net);
        const SpheresDataset ds = load_spheres(ev.data);
        double f_tr, f_va, f_te;
        if (std::sscanf(ev.split.c_str(), "%lf,%lf,%lf", &f_tr, &f_va, &f_te) != 3)
            throw CLI::ValidationError("bad --split");
        const auto idx = split_dataset(static_cast<int>(ds.samples.size()), f_tr, f_va, f_te, ds.seed);
        std::vector<Sample> samples;
        if (ev.subset == "train")
            samples = subset(ds.samples, idx.train);
        else if (ev.subset == "valid")
            samples = subset(ds.samples, idx.valid);
        else if (ev.subset == "test")
            samples = subset(ds.samples, idx.test);
        else
            samples = ds.samples;
        const EvalMetrics m = evaluate(net, samples);
        nlohmann::ordered_json j;
        j["subset"] = ev.subset;
        j["count"] = samples.size();
        j["accuracy"] = m.accuracy;
        j["macro_f1"] = m.macro_f1;
        j["loss"] = m.mean_loss;
        j["precision"] = m.precision;
        j["recall"] = m.recall;
        j["f1"] = m.f1;
        auto rows = nlohmann::ordered_json::array();
        for (auto& row : m.confusion.counts) rows.push_back(row);
        j["confusion"] = std::move(rows);
        if (ev.out.empty())
            std::cout << j.dump(2) << "\n";
        else
            write_text_file(ev.out, j.dump(2) + "\n");
    });

    // --- shapley ------------------------------------------------------------
    auto* shap_cmd = app.add_subcommand("shapley", "solve a coalitional game from a json table");
    struct {
        std::string game, method = "exact", out;
        std::size_t budget = 10000;
        std::uint64_t seed = 0;
    } sh;
    shap_cmd->add_option("--game", sh.game)->required();
    shap_cmd->add_option("--method", sh.method)
        ->check(CLI::IsMember({"exact", "perm-mc", "subset-mc", "stratified", "svarm"}));
    shap_cmd->add_option("--budget", sh.budget);
    auto* sh_seed = shap_cmd->add_option("--seed", sh.seed);
    shap_cmd->add_option("--out", sh.out, "write json here instead of stdout");
    shap_cmd->callback([&] {
        if (!sh_seed->count()) sh.seed = global_seed;
        const CoalitionalGame game = game_from_json(nlohmann::json::parse(read_text_file(sh.game)));
        Rng rng(sh.seed);
        ShapleyResult res;
        if (sh.method == "exact")
            res = shapley_exact(game);
        else if (sh.method == "perm-mc")
            res = shapley_permutation_mc(game, sh.budget, rng);
        else if (sh.method == "subset-mc")
            res = shapley_subset_mc(game, sh.budget, rng);
        else if (sh.method == "stratified")
            res = shapley_stratified(game, sh.budget, 0.05, rng);
        else
            res = shapley_svarm(game, sh.budget, rng);
        nlohmann::ordered_json j;
        for (auto& [p, v] : res.values) j["values"][p] = v;
        j["meta"] = {{"method", res.method},
                     {"samples_used", res.samples_used},
                     {"payoff_evals", res.payoff_evals},
                     {"seed", sh.seed},
                     {"version", kVersion}};
        if (sh.out.empty())
            std::cout << j.dump(2) << "\n";
        else
            write_text_file(sh.out, j.dump(2) + "\n");
    });

    // --- prune ----------------------------------------------------------------
    auto* prune_cmd = app.add_subcommand("prune", "run a training-pruning schedule");
    struct {
        std::string net, data, criterion = "magnitude", amount = "p=0.1", stop = "steps=1";
        std::string granularity = "weight", scope = "global", report, out, split = "0.7,0.15,0.15";
        bool rewire = false;
        int retrain_epochs = 0, batch = 32;
        double lr = 0.05;
        std::uint64_t seed = 0;
    } pr;
    prune_cmd->add_option("--net", pr.net)->required();
    prune_cmd->add_option("--data", pr.data)->required();
    prune_cmd->add_option("--criterion", pr.criterion)
        ->check(CLI::IsMember({"random", "magnitude", "shapley"}));
    prune_cmd->add_option("--amount", pr.amount, "k=N | p=F | bucket=F");
    prune_cmd->add_option("--stop", pr.stop, "steps=N | sparsity=F | perf=F | empty | bucket=F");
    prune_cmd->add_option("--granularity", pr.granularity)
        ->check(CLI::IsMember({"weight", "neuron", "block"}));
    prune_cmd->add_option("--scope", pr.scope)->check(CLI::IsMember({"global", "per-layer"}));
    prune_cmd->add_flag("--rewire", pr.rewire);
    prune_cmd->add_option("--retrain-epochs", pr.retrain_epochs);
    prune_cmd->add_option("--lr", pr.lr);
    prune_cmd->add_option("--batch", pr.batch);
    prune_cmd->add_option("--split", pr.split);
    auto* pr_seed = prune_cmd->add_option("--seed", pr.seed);
    prune_cmd->add_option("--report", pr.report)->required();
    prune_cmd->add_option("--out", pr.out, "optional pruned checkpoint path");
    prune_cmd->callback([&] {
        if (!pr_seed->count()) pr.seed = global_seed;
        MaskedNetwork net = load_network(pr.net);
        const SpheresDataset ds = load_spheres(pr.data);
        double f_tr, f_va, f_te;
        if (std::sscanf(pr.split.c_str(), "%lf,%lf,%lf", &f_tr, &f_va, &f_te) != 3)
            throw CLI::ValidationError("bad --split");
        const auto idx = split_dataset(static_cast<int>(ds.samples.size()), f_tr, f_va, f_te, ds.seed);

        PruneConfig config;
        config.granularity = granularity_from_string(pr.granularity);
        config.criterion = criterion_from_string(pr.criterion);
        config.scope = pr.scope == "global" ? Scope::global : Scope::per_layer;
        config.rewire = pr.rewire;
        config.retrain_epochs = pr.retrain_epochs;
        const auto amount_kv = detail::parse_key_value(pr.amount);
        if (amount_kv.key == "k")
            config.amount = {Amount::Kind::fixed, amount_kv.value};
        else if (amount_kv.key == "p")
            config.amount = {Amount::Kind::percentage, amount_kv.value};
        else if (amount_kv.key == "bucket")
            config.amount = {Amount::Kind::bucket, amount_kv.value};
        else
            throw CLI::ValidationError("bad --amount key: " + amount_kv.key);
        if (pr.stop == "empty") {
            config.stopping = {Stopping::Kind::empty_candidates, 0};
        } else {
            const auto stop_kv = detail::parse_key_value(pr.stop);
            if (stop_kv.key == "steps")
                config.stopping = {Stopping::Kind::fixed_steps, stop_kv.value};
            else if (stop_kv.key == "sparsity")
                config.stopping = {Stopping::Kind::target_sparsity, stop_kv.value};
            else if (stop_kv.key == "perf")
                config.stopping = {Stopping::Kind::performance_threshold, stop_kv.value};
            else if (stop_kv.key == "bucket")
                config.stopping = {Stopping::Kind::full_bucket, stop_kv.value};
            else
                throw CLI::ValidationError("bad --stop key: " + stop_kv.key);
        }
        const auto valid_samples = subset(ds.samples, idx.valid);
        config.attribution.eval_data = &valid_samples;
        config.attribution.seed = pr.seed;

        TrainScheme scheme;
        scheme.learning_rate = pr.lr;
        scheme.batch_size = pr.batch;
        scheme.epochs = pr.retrain_epochs > 0 ? pr.retrain_epochs : 1;
        scheme.loss = Loss::cross_entropy;
        scheme.seed = pr.seed;

        const auto history =
            run_schedule(net, subset(ds.samples, idx.train), subset(ds.samples, idx.test), config, scheme);
        ReportTable table;
        table.columns = {"step", "sparsity", "accuracy", "f1_macro", "loss"};
        for (const auto& rec : history)
            table.rows.push_back({static_cast<long long>(rec.step), rec.sparsity, rec.accuracy,
                                  rec.macro_f1, rec.loss});
        emit_report(table, "csv", pr.report);
        if (!pr.out.empty()) save_network(net, pr.out);
    });

    // --- evolve -----------------------------------------------------------------
    auto* evolve_cmd = app.add_subcommand("evolve", "elitist evolutionary architecture search");
    struct {
        std::string space = "udag:n=6", eval = "synthetic:density_target", ops = "resample=1.0";
        int pop = 20, gens = 20, max_vertices = 7, max_edges = 9;
        double survive = 0.5;
        bool unlabeled = false;
        int eval_scale = 60, eval_epochs = 10, eval_reps = 1;
        std::uint64_t seed = 0;
        std::string report, best_out;
    } evo;
    evolve_cmd->add_option("--space", evo.space);
    evolve_cmd->add_option("--eval", evo.eval);
    evolve_cmd->add_option("--pop", evo.pop);
    evolve_cmd->add_option("--gens", evo.gens);
    evolve_cmd->add_option("--survive", evo.survive);
    evolve_cmd->add_option("--ops", evo.ops, "weighted mix, e.g. relabel=0.25,rewire=0.25");
    evolve_cmd->add_option("--max-vertices", evo.max_vertices);
    evolve_cmd->add_option("--max-edges", evo.max_edges);
    evolve_cmd->add_flag("--unlabeled", evo.unlabeled);
    evolve_cmd->add_option("--eval-scale", evo.eval_scale);
    evolve_cmd->add_option("--eval-epochs", evo.eval_epochs);
    evolve_cmd->add_option("--eval-reps", evo.eval_reps);
    auto* evo_seed = evolve_cmd->add_option("--seed", evo.seed);
    evolve_cmd->add_option("--report", evo.report)->required();
    evolve_cmd->add_option("--best-out", evo.best_out, "optional best-graph json path");
    evolve_cmd->callback([&] {
        if (!evo_seed->count()) evo.seed = global_seed;
        EvolveConfig cfg;
        cfg.pop_size = evo.pop;
        cfg.generations = evo.gens;
        cfg.survivor_fraction = evo.survive;
        cfg.seed = evo.seed;
        cfg.constraints.max_vertices = evo.max_vertices;
        cfg.constraints.max_edges = evo.max_edges;
        cfg.constraints.require_labels = !evo.unlabeled;
        cfg.op_mix.clear();
        std::size_t pos = 0;
        while (pos < evo.ops.size()) {
            auto next = evo.ops.find(',', pos);
            if (next == std::string::npos) next = evo.ops.size();
            const auto kv = detail::parse_key_value(evo.ops.substr(pos, next - pos));
            cfg.op_mix[variation_op_from_string(kv.key)] = kv.value;
            pos = next + 1;
        }
        const auto space = detail::parse_space(evo.space, cfg.constraints);
        const auto evaluator =
            detail::parse_evaluator(evo.eval, evo.eval_scale, evo.eval_epochs, evo.eval_reps);
        const EvolveResult result = evolve(space.sampler, evaluator.evaluator, cfg);
        ReportTable table;
        table.columns = {"generation", "candidate", "score", "graph_vertices", "graph_edges",
                         "best_so_far"};
        std::map<int, int> counter;
        double best = -1e300;
        for (const auto& rec : result.history) {
            best = std::max(best, rec.score);
            table.rows.push_back({static_cast<long long>(rec.generation),
                                  static_cast<long long>(counter[rec.generation]++), rec.score,
                                  static_cast<long long>(rec.graph.order()),
                                  static_cast<long long>(rec.graph.size()), best});
        }
        emit_report(table, "csv", evo.report);
        if (!evo.best_out.empty()) save_graph(result.best.graph, evo.best_out);
        if (!quiet) std::cerr << "evolve: best score " << result.best.score << "\n";
    });

    // --- op-study ------------------------------------------------------------
    auto* study_cmd = app.add_subcommand("op-study", "delta-score study of one variation operator");
    struct {
        std::string op = "relabel", space = "udag:n=6", eval = "synthetic:order", report;
        int sources = 100, targets = 20, max_vertices = 7, max_edges = 9;
        bool unlabeled = false;
        int eval_scale = 60, eval_epochs = 10, eval_reps = 1;
        std::uint64_t seed = 0;
    } st;
    study_cmd->add_option("--op", st.op)
        ->required()
        ->check(CLI::IsMember({"relabel", "rewire", "contract", "distract"}));
    study_cmd->add_option("--sources", st.sources);
    study_cmd->add_option("--targets", st.targets);
    study_cmd->add_option("--space", st.space);
    study_cmd->add_option("--eval", st.eval);
    study_cmd->add_option("--max-vertices", st.max_vertices);
    study_cmd->add_option("--max-edges", st.max_edges);
    study_cmd->add_flag("--unlabeled", st.unlabeled);
    study_cmd->add_option("--eval-scale", st.eval_scale);
    study_cmd->add_option("--eval-epochs", st.eval_epochs);
    study_cmd->add_option("--eval-reps", st.eval_reps);
    auto* st_seed = study_cmd->add_option("--seed", st.seed);
    study_cmd->add_option("--report", st.report)->required();
    study_cmd->callback([&] {
        if (!st_seed->count()) st.seed = global_seed;
        SpaceConstraints constraints;
        constraints.max_vertices = st.max_vertices;
        constraints.max_edges = st.max_edges;
        constraints.require_labels = !st.unlabeled;
        const auto space = detail::parse_space(st.space, constraints);
        const auto evaluator = detail::parse_evaluator(st.eval, st.eval_scale, st.eval_epochs, st.eval_reps);
        const auto rows = operator_study(variation_op_from_string(st.op), space.sampler,
                                         evaluator.evaluator, st.sources, st.targets, constraints, st.seed);
        ReportTable table;
        table.columns = {"source", "target", "score_source", "score_target", "delta", "status"};
        for (const auto& row : rows) {
            table.rows.push_back({static_cast<long long>(row.source_index),
                                  static_cast<long long>(row.target_index), row.source_score,
                                  row.skipped ? ReportCell{std::string()} : ReportCell{row.target_score},
                                  row.skipped ? ReportCell{std::string()} : ReportCell{row.delta},
                                  std::string(row.skipped ? "skipped" : "ok")});
        }
        emit_report(table, "csv", st.report);
    });

    // --- features --------------------------------------------------------------
    auto* features_cmd = app.add_subcommand("features", "structural feature table for a graph directory");
    struct {
        std::string graphs, out;
    } ft;
    features_cmd->add_option("--graphs", ft.graphs)->required();
    features_cmd->add_option("--out", ft.out)->required();
    features_cmd->callback([&] {
        std::vector<std::filesystem::path> paths;
        for (auto& entry : std::filesystem::directory_iterator(ft.graphs)) {
            if (entry.path().extension() == ".json" && entry.path().filename() != "manifest.json")
                paths.push_back(entry.path());
        }
        std::sort(paths.begin(), paths.end());
        ReportTable table;
        table.columns.push_back("graph");
        for (auto& name : feature_names()) table.columns.push_back(name);
        for (auto& path : paths) {
            const Dag g = load_dag(path.string());
            const auto values = structural_features(g).ordered();
            std::vector<ReportCell> row{path.filename().string()};
            for (double v : values) row.emplace_back(v);
            table.rows.push_back(std::move(row));
        }
        emit_report(table, "csv", ft.out);
    });

    // --- predict ---------------------------------------------------------------
    auto* predict_cmd = app.add_subcommand("predict", "fit a linear structural performance predictor");
    struct {
        std::string records, out;
        std::uint64_t seed = 0;
    } pd;
    predict_cmd->add_option("--records", pd.records)->required();
    predict_cmd->add_option("--out", pd.out)->required();
    auto* pd_seed = predict_cmd->add_option("--seed", pd.seed);
    predict_cmd->callback([&] {
        if (!pd_seed->count()) pd.seed = global_seed;
        const auto rows = detail::read_csv(pd.records);
        if (rows.size() < 2) throw std::runtime_error("predict: no records");
        const auto& header = rows.front();
        std::map<std::string, std::size_t> col;
        for (std::size_t c = 0; c < header.size(); ++c) col[header[c]] = c;
        if (!col.count("score")) throw std::runtime_error("predict: records need a score column");
        for (auto& name : feature_names())
            if (!col.count(name)) throw std::runtime_error("predict: missing feature column " + name);
        std::vector<std::vector<double>> features;
        std::vector<double> scores;
        for (std::size_t r = 1; r < rows.size(); ++r) {
            if (rows[r].size() != header.size()) continue;  // trailing blank line
            std::vector<double> f;
            for (auto& name : feature_names()) f.push_back(std::stod(rows[r][col[name]]));
            features.push_back(std::move(f));
            scores.push_back(std::stod(rows[r][col["score"]]));
        }
        const FittedPredictor fit = fit_predictor(features, scores, pd.seed);
        nlohmann::ordered_json j;
        j["r2"] = fit.diagnostics.r2;
        j["pearson"] = fit.diagnostics.pearson;
        j["spearman"] = fit.diagnostics.spearman;
        j["rank_deficient"] = fit.diagnostics.rank_deficient;
        j["train_count"] = fit.diagnostics.train_count;
        j["test_count"] = fit.diagnostics.test_count;
        j["intercept"] = fit.model.intercept;
        nlohmann::ordered_json coeffs;
        for (std::size_t k = 0; k < fit.model.feature_order.size(); ++k)
            coeffs[fit.model.feature_order[k]] = fit.model.coefficients[k];
        j["coefficients"] = std::move(coeffs);
        j["version"] = kVersion;
        write_text_file(pd.out, j.dump(2) + "\n");
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        std::cout << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace gin::cli
