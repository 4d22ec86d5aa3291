#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cubical/core.hpp"
#include "cubical/cover_metrics.hpp"
#include "cubical/generators.hpp"
#include "cubical/median_graph.hpp"
#include "cubical/nets.hpp"
#include "cubical/normal_paths.hpp"

namespace cubical {

using Json = nlohmann::ordered_json;

// Canonical serialization: fixed key order, two-space indent, trailing
// newline. Identical values produce identical bytes.
inline std::string to_canonical_string(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("malformed JSON: ") + e.what());
    }
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str());
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write " + path);
    out << text;
}

// ---------------------------------------------------------------------------
// Graph JSON: {"vertices", "edges" (sorted), "labels" (when present),
// "validated"}

inline Json graph_to_json(const MedianGraph& g) {
    Json j;
    j["vertices"] = g.n();
    std::vector<std::pair<int, int>> edges = g.edges();
    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    Json je = Json::array();
    for (auto [u, v] : edges) je.push_back(Json::array({u, v}));
    j["edges"] = std::move(je);
    if (!g.labels().empty()) {
        Json jl = Json::object();
        for (const auto& [k, v] : g.labels()) jl[k] = v;
        j["labels"] = std::move(jl);
    }
    j["validated"] = g.is_validated();
    return j;
}

inline MedianGraph graph_from_json(const Json& j) {
    try {
        int n = j.at("vertices").get<int>();
        if (n < 1) throw invalid_input("graph needs at least one vertex");
        std::vector<std::pair<int, int>> edges;
        for (const Json& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw invalid_input("edge is not a pair");
            int u = e[0].get<int>(), v = e[1].get<int>();
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw invalid_input("edge endpoint out of range");
            edges.emplace_back(u, v);
        }
        bool validate = j.value("validated", true);
        MedianGraph g = MedianGraph::build_with_count(n, std::move(edges), validate);
        if (j.contains("labels")) {
            std::map<std::string, std::string> labels;
            for (auto it = j.at("labels").begin(); it != j.at("labels").end(); ++it)
                labels[it.key()] = it.value().get<std::string>();
            g.set_labels(std::move(labels));
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("malformed graph JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Normal path JSON

inline Json normal_path_to_json(const NormalPath& p) {
    Json j;
    j["source"] = p.source;
    j["target"] = p.target;
    Json cubes = Json::array();
    for (const auto& c : p.cubes) cubes.push_back(c);
    j["cubes"] = std::move(cubes);
    j["vertices"] = p.vertices;
    return j;
}

// ---------------------------------------------------------------------------
// Metric space JSON: {"points", "dist"}

inline Json space_to_json(const MetricSpace<long long>& s) {
    Json j;
    j["points"] = s.n();
    Json rows = Json::array();
    for (int x = 0; x < s.n(); ++x) {
        Json row = Json::array();
        for (int y = 0; y < s.n(); ++y) row.push_back(s.dist(x, y));
        rows.push_back(std::move(row));
    }
    j["dist"] = std::move(rows);
    return j;
}

inline MetricSpace<long long> space_from_json(const Json& j) {
    try {
        int n = j.at("points").get<int>();
        std::vector<std::vector<long long>> table;
        for (const Json& row : j.at("dist"))
            table.push_back(row.get<std::vector<long long>>());
        if (static_cast<int>(table.size()) != n)
            throw invalid_input("dist row count disagrees with points");
        return MetricSpace<long long>::from_table(std::move(table));
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("malformed space JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Cover JSON: {"basepoint", "l", "sets": {"A_<h>": [ids]}, "metrics"}

inline Json cover_to_json(const NetCover& cov) {
    Json j;
    j["basepoint"] = cov.basepoint;
    j["l"] = cov.l;
    Json sets = Json::object();
    for (std::size_t i = 0; i < cov.cover.sets.size(); ++i)
        sets[cov.cover.names[i]] = to_vector(cov.cover.sets[i]);
    j["sets"] = std::move(sets);
    Json metrics;
    metrics["mesh"] = cov.stats.mesh;
    metrics["m"] = cov.stats.multiplicity;
    metrics["m_l"] = cov.stats.r_multiplicity;
    j["metrics"] = std::move(metrics);
    return j;
}

inline NetCover cover_from_json(const Json& j, int n_points) {
    try {
        NetCover cov;
        cov.basepoint = j.at("basepoint").get<int>();
        cov.l = j.at("l").get<int>();
        for (auto it = j.at("sets").begin(); it != j.at("sets").end(); ++it) {
            Bits b(n_points);
            for (int p : it.value().get<std::vector<int>>()) {
                if (p < 0 || p >= n_points) throw invalid_input("cover point out of range");
                b.set(p);
            }
            cov.cover.sets.push_back(std::move(b));
            cov.cover.names.push_back(it.key());
            const std::string& key = it.key();
            if (key.rfind("A_", 0) == 0)
                cov.reps.push_back(std::stoi(key.substr(2)));
        }
        if (j.contains("metrics")) {
            cov.stats.mesh = j.at("metrics").at("mesh").get<long long>();
            cov.stats.multiplicity = j.at("metrics").at("m").get<int>();
            cov.stats.r_multiplicity = j.at("metrics").at("m_l").get<int>();
        }
        return cov;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("malformed cover JSON: ") + e.what());
    } catch (const std::exception& e) {
        throw invalid_input(std::string("malformed cover JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Generator spec JSON: mirrors GenSpec fields

inline Json gen_spec_to_json(const GenSpec& spec) {
    Json j;
    j["kind"] = spec.kind;
    if (!spec.dims.empty()) j["dims"] = spec.dims;
    if (spec.n > 0) j["n"] = spec.n;
    j["seed"] = spec.seed;
    if (!spec.factors.empty()) {
        Json f = Json::array();
        for (auto [size, seed] : spec.factors) f.push_back(Json::array({size, seed}));
        j["factors"] = std::move(f);
    }
    return j;
}

inline GenSpec gen_spec_from_json(const Json& j) {
    try {
        GenSpec spec;
        spec.kind = j.at("kind").get<std::string>();
        if (j.contains("dims")) spec.dims = j.at("dims").get<std::vector<int>>();
        if (j.contains("n")) spec.n = j.at("n").get<int>();
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("factors"))
            for (const Json& f : j.at("factors"))
                spec.factors.emplace_back(f.at(0).get<int>(), f.at(1).get<std::uint64_t>());
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("malformed generator spec: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// DOT export: undirected graph, wall id as edge attribute, optional vertex
// coloring by first containing cover element.

inline std::string graph_to_dot(const MedianGraph& g, const Cover* cover = nullptr) {
    std::ostringstream os;
    os << "graph cubical {\n";
    os << "  node [shape=circle];\n";
    for (int v = 0; v < g.n(); ++v) {
        os << "  " << v;
        if (cover) {
            int owner = -1;
            for (std::size_t i = 0; i < cover->sets.size() && owner < 0; ++i)
                if (cover->sets[i].test(v)) owner = static_cast<int>(i);
            if (owner >= 0)
                os << " [style=filled fillcolor=\"/set312/" << (owner % 12) + 1 << "\"]";
        }
        os << ";\n";
    }
    std::vector<std::pair<int, int>> edges = g.edges();
    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    for (auto [u, v] : edges)
        os << "  " << u << " -- " << v << " [wall=" << g.wall_of_edge(u, v) << "];\n";
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// CSV: fixed column set for the scale reports

struct CsvRow {
    std::string instance;
    std::string kind;
    int vertices = 0;
    int eta = 0;
    int l = 0;
    long long mesh = 0;
    long long m_l = 0;
    long long bound_mesh = 0;
    long long bound_n = 0;
};

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string csv_report(const std::vector<CsvRow>& rows) {
    std::ostringstream os;
    os << "instance,kind,vertices,eta,l,mesh,m_l,bound_mesh,bound_N\n";
    for (const CsvRow& r : rows)
        os << csv_field(r.instance) << ',' << csv_field(r.kind) << ',' << r.vertices << ','
           << r.eta << ',' << r.l << ',' << r.mesh << ',' << r.m_l << ',' << r.bound_mesh
           << ',' << r.bound_n << "\n";
    return os.str();
}

}  // namespace cubical
