#pragma once

#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cubical/io.hpp"
#include "cubical/verify.hpp"

namespace cubical {

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string output;
    std::string cover_path;
    int basepoint = 0;
    int l_lo = 1;
    int l_hi = 1;
    VerifyLevel level = VerifyLevel::full;
    std::uint64_t seed = 0;
    GenSpec spec;
    int from = 0;
    int to = 0;
};

namespace detail {

// "2" or "1..3".
inline std::pair<int, int> parse_l_range(const std::string& text) {
    auto is_digits = [](const std::string& s) {
        return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
    };
    std::size_t dots = text.find("..");
    std::string lo = dots == std::string::npos ? text : text.substr(0, dots);
    std::string hi = dots == std::string::npos ? text : text.substr(dots + 2);
    if (!is_digits(lo) || !is_digits(hi))
        throw invalid_input("scale range must look like 2 or 1..3");
    int a = std::stoi(lo), b = std::stoi(hi);
    if (a < 1 || b < a) throw invalid_input("scale range needs 1 <= lo <= hi");
    return {a, b};
}

// "3:1,5:2" -> {(3,1),(5,2)}.
inline std::vector<std::pair<int, std::uint64_t>> parse_factors(const std::string& text) {
    std::vector<std::pair<int, std::uint64_t>> out;
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        std::size_t colon = item.find(':');
        try {
            if (colon == std::string::npos)
                out.emplace_back(std::stoi(item), 0);
            else
                out.emplace_back(std::stoi(item.substr(0, colon)),
                                 std::stoull(item.substr(colon + 1)));
        } catch (const std::exception&) {
            throw invalid_input("factors must look like 3:1,5:2");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline void emit(const std::string& output, const std::string& text) {
    if (output.empty())
        std::cout << text;
    else
        write_text_file(output, text);
}

inline std::string basename_of(const std::string& path) {
    std::size_t slash = path.find_last_of('/');
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

inline std::string label_or(const MedianGraph& g, const std::string& key,
                            const std::string& fallback) {
    auto it = g.labels().find(key);
    return it == g.labels().end() ? fallback : it->second;
}

inline Json report_to_json(const RunConfig& cfg, const VerifyReport& rep) {
    Json j;
    j["basepoint"] = cfg.basepoint;
    j["l"] = Json::array({cfg.l_lo, cfg.l_hi});
    j["level"] = cfg.level == VerifyLevel::full ? "full" : "fast";
    j["pass"] = rep.pass();
    Json checks = Json::array();
    for (const CheckResult& c : rep.checks) {
        Json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        if (c.informational) jc["informational"] = true;
        if (!c.witness.empty()) jc["witness"] = c.witness;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);
    return j;
}

inline void print_report(std::ostream& os, const VerifyReport& rep) {
    int fails = 0;
    for (const CheckResult& c : rep.checks) {
        const char* mark = c.informational ? "[info]" : (c.pass ? "[ ok ]" : "[FAIL]");
        if (!c.pass && !c.informational) ++fails;
        os << mark << " " << c.name;
        if (!c.witness.empty() && (!c.pass || c.informational)) os << " — " << c.witness;
        os << "\n";
    }
    os << "verify: " << rep.checks.size() << " checks, " << fails << " gating failure(s)\n";
}

}  // namespace detail

// Front end used by main() and by the in-process tests. `args` excludes the
// program name. Exit status: 0 success, 1 invariant violation in verify,
// 2 malformed input or command line.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"median graphs, normal cube paths, separated nets, and covers"};
    app.require_subcommand(1);
    RunConfig cfg;

    std::string kind, factors_text, l_text = "1", level_text = "full";
    std::vector<int> dims;
    int n_value = 0;

    CLI::App* gen = app.add_subcommand("gen", "generate an instance, write graph JSON");
    gen->add_option("--kind", kind, "grid | tree | staircase | tree_product")->required();
    gen->add_option("--dims", dims, "grid/staircase dimensions, e.g. 3,3")->delimiter(',');
    gen->add_option("--n", n_value, "tree vertex count");
    gen->add_option("--seed", cfg.seed, "generator seed");
    gen->add_option("--factors", factors_text, "tree product factors, e.g. 3:1,5:2");
    gen->add_option("-o,--output", cfg.output, "output path (stdout when absent)");

    CLI::App* inspect = app.add_subcommand("inspect", "hyperplanes, dimension, validation");
    inspect->add_option("-i,--input", cfg.inputs, "graph JSON")->required();

    CLI::App* npath = app.add_subcommand("normal-path", "normal cube path between two ids");
    npath->add_option("-i,--input", cfg.inputs, "graph JSON")->required();
    npath->add_option("--from", cfg.from, "source vertex")->required();
    npath->add_option("--to", cfg.to, "target vertex")->required();
    npath->add_option("-o,--output", cfg.output, "output path (stdout when absent)");

    CLI::App* cover = app.add_subcommand("cover", "build the scale-l cover, write cover JSON");
    cover->add_option("-i,--input", cfg.inputs, "graph JSON")->required();
    cover->add_option("--base", cfg.basepoint, "basepoint id (default 0)");
    cover->add_option("--l", l_text, "scale (single value)");
    cover->add_option("-o,--output", cfg.output, "output path (stdout when absent)");

    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite over an l range");
    verify->add_option("-i,--input", cfg.inputs, "graph JSON")->required();
    verify->add_option("--base", cfg.basepoint, "basepoint id (default 0)");
    verify->add_option("--l", l_text, "scale range, e.g. 1..2");
    verify->add_option("--level", level_text, "fast | full")
        ->check(CLI::IsMember({"fast", "full"}));
    verify->add_option("-o,--output", cfg.output, "JSON report path");

    CLI::App* report = app.add_subcommand("ad-report", "CSV of cover metrics per instance and l");
    report->add_option("-i,--input", cfg.inputs, "graph JSON (repeatable)")->required();
    report->add_option("--base", cfg.basepoint, "basepoint id (default 0)");
    report->add_option("--l", l_text, "scale range, e.g. 1..3");
    report->add_option("-o,--output", cfg.output, "output path (stdout when absent)");

    CLI::App* dot = app.add_subcommand("export-dot", "DOT with wall ids, optional cover colors");
    dot->add_option("-i,--input", cfg.inputs, "graph JSON")->required();
    dot->add_option("--cover", cfg.cover_path, "cover JSON for vertex coloring");
    dot->add_option("-o,--output", cfg.output, "output path (stdout when absent)");

    std::vector<const char*> argv;
    argv.push_back("cubical");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const bool verifying = verify->parsed();
    try {
        std::tie(cfg.l_lo, cfg.l_hi) = detail::parse_l_range(l_text);
        cfg.level = level_text == "fast" ? VerifyLevel::fast : VerifyLevel::full;

        if (gen->parsed()) {
            cfg.spec = GenSpec{kind, dims, n_value, cfg.seed,
                               detail::parse_factors(factors_text)};
            MedianGraph g = generate(cfg.spec);
            detail::emit(cfg.output, to_canonical_string(graph_to_json(g)));
            return 0;
        }

        MedianGraph g = graph_from_json(read_json_file(cfg.inputs.at(0)));

        if (inspect->parsed()) {
            Json j;
            j["vertices"] = g.n();
            j["edges"] = static_cast<int>(g.edges().size());
            j["walls"] = g.wall_count();
            j["dimension"] = g.dimension();
            j["validated"] = g.is_validated();
            if (!g.labels().empty()) {
                Json jl = Json::object();
                for (const auto& [k, v] : g.labels()) jl[k] = v;
                j["labels"] = std::move(jl);
            }
            Json walls = Json::array();
            for (const auto& w : g.walls()) {
                Json jw;
                jw["id"] = w.id;
                jw["minus"] = static_cast<int>(w.minus.count());
                jw["plus"] = static_cast<int>(w.plus.count());
                jw["crossings"] = static_cast<int>(g.crossing_row(w.id).count());
                walls.push_back(std::move(jw));
            }
            j["hyperplanes"] = std::move(walls);
            detail::emit(cfg.output, to_canonical_string(j));
            return 0;
        }

        if (npath->parsed()) {
            if (cfg.from < 0 || cfg.from >= g.n() || cfg.to < 0 || cfg.to >= g.n())
                throw invalid_input("path endpoint out of range");
            NormalGeometry geo(g);
            Json j = normal_path_to_json(geo.path(cfg.from, cfg.to));
            j["dnor"] = geo.dnor(cfg.from, cfg.to);
            detail::emit(cfg.output, to_canonical_string(j));
            return 0;
        }

        if (cover->parsed()) {
            if (cfg.l_lo != cfg.l_hi) throw invalid_input("cover takes a single scale");
            NormalGeometry geo(g);
            NetBuilder nets(geo, cfg.l_lo);
            NetCover cov = build_cover(nets, cfg.basepoint);
            detail::emit(cfg.output, to_canonical_string(cover_to_json(cov)));
            return 0;
        }

        if (verifying) {
            VerifyReport rep = run_invariant_suite(g, cfg.basepoint, cfg.l_lo, cfg.l_hi,
                                                   cfg.level);
            detail::print_report(out, rep);
            if (!cfg.output.empty())
                write_text_file(cfg.output,
                                to_canonical_string(detail::report_to_json(cfg, rep)));
            return rep.pass() ? 0 : 1;
        }

        if (report->parsed()) {
            std::vector<CsvRow> rows;
            for (const std::string& path : cfg.inputs) {
                MedianGraph inst = graph_from_json(read_json_file(path));
                Constants c = constants(std::max(1, inst.dimension()));
                NormalGeometry geo(inst);
                for (int l = cfg.l_lo; l <= cfg.l_hi; ++l) {
                    NetBuilder nets(geo, l);
                    NetCover cov = build_cover(nets, cfg.basepoint);
                    rows.push_back({detail::basename_of(path),
                                    detail::label_or(inst, "kind", "unknown"), inst.n(),
                                    c.eta, l, cov.stats.mesh, cov.stats.r_multiplicity,
                                    c.M * static_cast<long long>(l), c.N});
                }
            }
            detail::emit(cfg.output, csv_report(rows));
            return 0;
        }

        if (dot->parsed()) {
            if (cfg.cover_path.empty()) {
                detail::emit(cfg.output, graph_to_dot(g));
            } else {
                NetCover cov = cover_from_json(read_json_file(cfg.cover_path), g.n());
                detail::emit(cfg.output, graph_to_dot(g, &cov.cover));
            }
            return 0;
        }
    } catch (const median_axiom_violation& e) {
        if (verifying) {
            out << "[FAIL] median_axioms — " << e.what() << "\n";
            out << "verify: 1 checks, 1 gating failure(s)\n";
            return 1;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace cubical
