#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cubical/core.hpp"
#include "cubical/median_graph.hpp"

namespace cubical {

struct GenSpec {
    std::string kind;  // tree | grid | tree_product | staircase
    std::vector<int> dims;
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<std::pair<int, std::uint64_t>> factors;  // tree_product: (size, seed)
};

namespace detail {

// rng()%k instead of uniform_int_distribution: the raw engine sequence is
// pinned by the standard, the distributions are not, and identical spec+seed
// must replay byte-identically everywhere.
inline int draw(std::mt19937_64& rng, int k) { return static_cast<int>(rng() % k); }

inline std::vector<std::pair<int, int>> tree_edges(int n, std::uint64_t seed) {
    if (n < 1) throw invalid_input("tree size must be at least 1");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) edges.emplace_back(draw(rng, i), i);
    return edges;
}

struct Factor {
    int size = 0;
    std::vector<std::pair<int, int>> edges;
};

// Cartesian product with lexicographic vertex numbering, first factor most
// significant.
inline std::pair<int, std::vector<std::pair<int, int>>> product_edges(
    const std::vector<Factor>& fs) {
    long long total = 1;
    for (const Factor& f : fs) {
        if (f.size < 1) throw invalid_input("product factor must be nonempty");
        total *= f.size;
        if (total > 100000) throw budget_exceeded("product size exceeds the generator budget");
    }
    std::vector<long long> stride(fs.size(), 1);
    for (int i = static_cast<int>(fs.size()) - 2; i >= 0; --i)
        stride[i] = stride[i + 1] * fs[i + 1].size;
    std::vector<std::pair<int, int>> edges;
    long long outer = 1;
    for (std::size_t f = 0; f < fs.size(); ++f) {
        long long inner = stride[f];
        for (long long hi = 0; hi < outer; ++hi)
            for (const auto& [a, b] : fs[f].edges)
                for (long long lo = 0; lo < inner; ++lo) {
                    long long base = hi * (fs[f].size * inner);
                    edges.emplace_back(static_cast<int>(base + a * inner + lo),
                                       static_cast<int>(base + b * inner + lo));
                }
        outer *= fs[f].size;
    }
    return {static_cast<int>(total), std::move(edges)};
}

}  // namespace detail

// Every generated instance is built with full median validation.
inline MedianGraph generate(const GenSpec& spec) {
    constexpr int kBudget = 400;
    std::map<std::string, std::string> labels;
    labels["kind"] = spec.kind;
    labels["seed"] = std::to_string(spec.seed);
    int count = 0;
    std::vector<std::pair<int, int>> edges;
    if (spec.kind == "tree") {
        if (spec.n > kBudget) throw budget_exceeded("tree size exceeds the generator budget");
        count = spec.n;
        edges = detail::tree_edges(spec.n, spec.seed);
        labels["params"] = "n=" + std::to_string(spec.n);
    } else if (spec.kind == "grid") {
        if (spec.dims.empty()) throw invalid_input("grid needs at least one dimension");
        std::vector<detail::Factor> fs;
        std::string params;
        for (int d : spec.dims) {
            if (d < 1) throw invalid_input("grid dimensions must be positive");
            detail::Factor f;
            f.size = d;
            for (int i = 0; i + 1 < d; ++i) f.edges.emplace_back(i, i + 1);
            fs.push_back(std::move(f));
            params += (params.empty() ? "" : "x") + std::to_string(d);
        }
        std::tie(count, edges) = detail::product_edges(fs);
        labels["params"] = params;
    } else if (spec.kind == "tree_product") {
        if (spec.factors.empty()) throw invalid_input("tree product needs factors");
        std::vector<detail::Factor> fs;
        std::string params;
        for (const auto& [size, seed] : spec.factors) {
            detail::Factor f;
            f.size = size;
            f.edges = detail::tree_edges(size, seed);
            fs.push_back(std::move(f));
            params += (params.empty() ? "" : "x") + std::to_string(size) + "@" +
                      std::to_string(seed);
        }
        std::tie(count, edges) = detail::product_edges(fs);
        labels["params"] = params;
    } else if (spec.kind == "staircase") {
        if (spec.dims.size() != 2) throw invalid_input("staircase needs two dimensions");
        int w = spec.dims[0], h = spec.dims[1];
        if (w < 1 || h < 1) throw invalid_input("staircase dimensions must be positive");
        if (static_cast<long long>(w) * h > kBudget)
            throw budget_exceeded("staircase bounding box exceeds the generator budget");
        // Heights come from a shuffled monotone lattice path; its lower set
        // (a two-dimensional order ideal) is median-closed.
        std::mt19937_64 rng(spec.seed);
        std::vector<char> moves(static_cast<std::size_t>(w) + h, 'R');
        for (int i = 0; i < h; ++i) moves[static_cast<std::size_t>(w) + i] = 'D';
        for (int i = static_cast<int>(moves.size()) - 1; i > 0; --i)
            std::swap(moves[i], moves[detail::draw(rng, i + 1)]);
        std::vector<int> heights;
        int level = h;
        for (char m : moves) {
            if (m == 'D') --level;
            else heights.push_back(level);
        }
        heights[0] = std::max(heights[0], 1);
        std::map<std::pair<int, int>, int> id;
        for (int i = 0; i < w; ++i)
            for (int j = 0; j < heights[i]; ++j)
                id[{i, j}] = static_cast<int>(id.size());
        for (const auto& [cell, v] : id) {
            auto right = id.find({cell.first + 1, cell.second});
            if (right != id.end()) edges.emplace_back(v, right->second);
            auto up = id.find({cell.first, cell.second + 1});
            if (up != id.end()) edges.emplace_back(v, up->second);
        }
        count = static_cast<int>(id.size());
        labels["params"] = std::to_string(w) + "x" + std::to_string(h);
    } else {
        throw invalid_input("unknown generator kind: " + spec.kind);
    }
    if (count > kBudget) throw budget_exceeded("instance size exceeds the generator budget");
    MedianGraph g = MedianGraph::build_with_count(count, edges, /*validate=*/true);
    g.set_labels(labels);
    return g;
}

}  // namespace cubical
