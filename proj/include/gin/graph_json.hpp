#pragma once

// Graph (de)serialization. Schema:
//   {"order": <int>, "edges": [[s,t], ...], "labels": {"<v>": "<lab>"} | absent,
//    "directed": true|false}
// Edges are emitted sorted so identical graphs always serialize identically.

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gin/graph.hpp"

namespace gin {

inline nlohmann::ordered_json to_json(const Dag& g) {
    nlohmann::ordered_json j;
    j["order"] = g.order();
    auto edges = nlohmann::ordered_json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    if (g.labeled()) {
        nlohmann::ordered_json labels;
        for (auto& [v, lab] : g.labels()) labels[std::to_string(v)] = lab;
        j["labels"] = std::move(labels);
    }
    j["directed"] = true;
    return j;
}

inline nlohmann::ordered_json to_json(const UGraph& g) {
    nlohmann::ordered_json j;
    j["order"] = g.order();
    auto edges = nlohmann::ordered_json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    j["directed"] = false;
    return j;
}

inline bool json_is_directed(const nlohmann::json& j) {
    return j.value("directed", true);
}

inline Dag dag_from_json(const nlohmann::json& j) {
    if (!json_is_directed(j)) throw std::invalid_argument("graph json: expected directed graph");
    std::vector<Edge> edges;
    for (auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    std::map<int, std::string> labels;
    if (j.contains("labels"))
        for (auto& [k, v] : j.at("labels").items()) labels[std::stoi(k)] = v.get<std::string>();
    return Dag(j.at("order").get<int>(), std::move(edges), std::move(labels));
}

inline UGraph ugraph_from_json(const nlohmann::json& j) {
    if (json_is_directed(j)) throw std::invalid_argument("graph json: expected undirected graph");
    std::vector<Edge> edges;
    for (auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return UGraph(j.at("order").get<int>(), std::move(edges));
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void save_graph(const Dag& g, const std::string& path) {
    write_text_file(path, to_json(g).dump(2) + "\n");
}

inline void save_graph(const UGraph& g, const std::string& path) {
    write_text_file(path, to_json(g).dump(2) + "\n");
}

inline Dag load_dag(const std::string& path) {
    return dag_from_json(nlohmann::json::parse(read_text_file(path)));
}

inline UGraph load_ugraph(const std::string& path) {
    return ugraph_from_json(nlohmann::json::parse(read_text_file(path)));
}

}  // namespace gin
