#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "cubical/median_graph.hpp"

using namespace cubical;

namespace {

std::vector<std::pair<int, int>> path_edges(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return e;
}

// (r,c) -> 3r+c
MedianGraph grid3x3() {
    std::vector<std::pair<int, int>> e;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            if (c + 1 < 3) e.emplace_back(3 * r + c, 3 * r + c + 1);
            if (r + 1 < 3) e.emplace_back(3 * r + c, 3 * (r + 1) + c);
        }
    return MedianGraph::build(e, true);
}

MedianGraph cube_q3() {
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < 8; ++v)
        for (int b = 0; b < 3; ++b)
            if (!(v & (1 << b))) e.emplace_back(v, v | (1 << b));
    return MedianGraph::build(e, true);
}

std::set<int> interval_set(const MedianGraph& g, int a, int b) {
    std::set<int> out;
    for (int v : to_vector(g.interval(a, b))) out.insert(v);
    return out;
}

}  // namespace

TEST_CASE("paths and even cycles validate as median graphs", "[median_graph]") {
    MedianGraph p = MedianGraph::build({{0, 1}, {1, 2}}, true);
    REQUIRE(p.n() == 3);
    REQUIRE(p.is_validated());
    MedianGraph c4 = MedianGraph::build({{0, 1}, {1, 2}, {2, 3}, {3, 0}}, true);
    REQUIRE(c4.is_validated());
    REQUIRE(c4.wall_count() == 2);
    REQUIRE(c4.crossing(0, 1));
    REQUIRE(c4.dimension() == 2);
}

TEST_CASE("K_{2,3} is rejected with the degree-two witness triple", "[median_graph]") {
    std::vector<std::pair<int, int>> e;
    for (int a : {0, 1})
        for (int b : {2, 3, 4}) e.emplace_back(a, b);
    try {
        MedianGraph::build(e, true);
        FAIL("expected a median axiom violation");
    } catch (const median_axiom_violation& v) {
        REQUIRE(v.x == 2);
        REQUIRE(v.y == 3);
        REQUIRE(v.z == 4);
        REQUIRE(v.intersection == std::vector<int>{0, 1});
    }
}

TEST_CASE("malformed inputs are rejected", "[median_graph]") {
    REQUIRE_THROWS_AS(MedianGraph::build({}, true), invalid_input);
    REQUIRE_THROWS_AS(MedianGraph::build({{0, 0}}, true), invalid_input);
    REQUIRE_THROWS_AS(MedianGraph::build({{0, 1}, {1, 0}}, true), invalid_input);
    REQUIRE_THROWS_AS(MedianGraph::build_with_count(4, {{0, 1}, {2, 3}}, true),
                      disconnected_graph);
    REQUIRE_THROWS_AS(MedianGraph::build_with_count(3, {{0, 1}}, true), disconnected_graph);
}

TEST_CASE("validation cap and unvalidated medians", "[median_graph]") {
    REQUIRE_THROWS_AS(MedianGraph::build(path_edges(401), true, 400), budget_exceeded);
    MedianGraph g = MedianGraph::build(path_edges(401), false);
    REQUIRE_FALSE(g.is_validated());
    REQUIRE(g.dist(0, 400) == 400);
    REQUIRE_THROWS_AS(g.median(0, 1, 2), precondition_violation);
}

TEST_CASE("median values on frozen instances", "[median_graph]") {
    MedianGraph g = grid3x3();
    REQUIRE(g.median(0, 6, 2) == 0);
    for (int x : {0, 4, 7})
        for (int y : {1, 8}) REQUIRE(g.median(x, x, y) == x);
    MedianGraph p = MedianGraph::build(path_edges(4), true);
    REQUIRE(p.median(0, 3, 2) == 2);
}

TEST_CASE("interval contents on frozen instances", "[median_graph]") {
    MedianGraph g = grid3x3();
    REQUIRE(interval_set(g, 0, 4) == std::set<int>{0, 1, 3, 4});
    REQUIRE(interval_set(g, 4, 4) == std::set<int>{4});
    MedianGraph p = MedianGraph::build(path_edges(4), true);
    REQUIRE(interval_set(p, 0, 3) == std::set<int>{0, 1, 2, 3});
}

TEST_CASE("hyperplanes of a path split it at each edge", "[median_graph]") {
    MedianGraph p = MedianGraph::build({{0, 1}, {1, 2}}, true);
    REQUIRE(p.wall_count() == 2);
    std::set<std::set<int>> sides;
    for (const Hyperplane& h : p.walls()) {
        std::vector<int> minus = to_vector(h.minus);
        sides.insert(std::set<int>(minus.begin(), minus.end()));
    }
    REQUIRE(sides == std::set<std::set<int>>{{0}, {0, 1}});
    REQUIRE_FALSE(p.crossing(0, 1));
}

TEST_CASE("grid hyperplanes: four walls, crossing exactly across orientations",
          "[median_graph]") {
    MedianGraph g = grid3x3();
    REQUIRE(g.wall_count() == 4);
    int v1 = g.wall_of_edge(0, 1);  // column wall between c=0 and c=1
    int v2 = g.wall_of_edge(1, 2);
    int h1 = g.wall_of_edge(0, 3);  // row wall between r=0 and r=1
    int h2 = g.wall_of_edge(3, 6);
    REQUIRE_FALSE(g.crossing(v1, v2));
    REQUIRE_FALSE(g.crossing(h1, h2));
    REQUIRE(g.crossing(v1, h1));
    REQUIRE(g.crossing(v2, h2));
    REQUIRE(g.dimension() == 2);
}

TEST_CASE("dimension of frozen families", "[median_graph]") {
    MedianGraph star = MedianGraph::build({{0, 1}, {0, 2}, {0, 3}, {0, 4}}, true);
    REQUIRE(star.dimension() == 1);
    REQUIRE(grid3x3().dimension() == 2);
    REQUIRE(cube_q3().dimension() == 3);
    MedianGraph g = grid3x3();
    REQUIRE(g.dimension(0, 2) == 1);
    REQUIRE(g.dimension(0, 8) == 2);
    REQUIRE(g.dimension(4, 4) == 0);
}

TEST_CASE("separating wall count equals distance", "[median_graph]") {
    for (const MedianGraph& g : {grid3x3(), cube_q3()})
        for (int x = 0; x < g.n(); ++x)
            for (int y = 0; y < g.n(); ++y)
                REQUIRE(static_cast<int>(g.separating_walls(x, y).size()) == g.dist(x, y));
}

TEST_CASE("halfspace sides partition the vertex set", "[median_graph]") {
    MedianGraph g = grid3x3();
    for (const Hyperplane& h : g.walls()) {
        REQUIRE((h.minus & h.plus).none());
        REQUIRE((h.minus | h.plus).count() == static_cast<std::size_t>(g.n()));
        REQUIRE(h.minus.test(0));
        for (auto [u, v] : h.rep_edges) {
            REQUIRE(h.minus.test(u));
            REQUIRE(h.plus.test(v));
        }
    }
}

TEST_CASE("interval view: anchored halfspace order matches crossing", "[median_graph]") {
    MedianGraph g = grid3x3();
    IntervalView iv = g.interval_view(0, 8);
    REQUIRE(iv.walls.size() == 4);
    for (std::size_t i = 0; i < iv.walls.size(); ++i)
        for (std::size_t j = 0; j < iv.walls.size(); ++j) {
            if (i == j) continue;
            bool comparable = iv.less(i, j) || iv.less(j, i);
            REQUIRE(comparable == !g.crossing(iv.walls[i], iv.walls[j]));
            REQUIRE(iv.incomparable(i, j) == g.crossing(iv.walls[i], iv.walls[j]));
        }
}

TEST_CASE("weak modularity: intervals to edge endpoints are nested", "[median_graph]") {
    for (const MedianGraph& g : {grid3x3(), cube_q3()})
        for (int x = 0; x < g.n(); ++x)
            for (auto [z, y] : g.edges()) {
                for (int swap = 0; swap < 2; ++swap) {
                    int a = swap ? y : z, b = swap ? z : y;
                    const Bits& xa = g.interval(x, a);
                    const Bits& xb = g.interval(x, b);
                    REQUIRE((xa.is_subset_of(xb) || xb.is_subset_of(xa)));
                }
            }
}

TEST_CASE("points between two interval points stay in the interval", "[median_graph]") {
    for (const MedianGraph& g : {grid3x3(), cube_q3()})
        for (int x = 0; x < g.n(); ++x)
            for (int y = 0; y < g.n(); ++y) {
                const Bits& xy = g.interval(x, y);
                for (int z : to_vector(xy))
                    for (int w : to_vector(xy))
                        if (g.in_interval(z, x, w))
                            REQUIRE(g.in_interval(w, z, y));
            }
}

TEST_CASE("labels persist", "[median_graph]") {
    MedianGraph g = grid3x3();
    g.set_labels({{"kind", "grid"}, {"params", "3x3"}});
    REQUIRE(g.labels().at("kind") == "grid");
}
