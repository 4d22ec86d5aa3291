#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "cubical/median_graph.hpp"
#include "cubical/normal_paths.hpp"

using namespace cubical;

namespace {

std::vector<std::pair<int, int>> path_edges(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return e;
}

MedianGraph grid3x3() {
    std::vector<std::pair<int, int>> e;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            if (c + 1 < 3) e.emplace_back(3 * r + c, 3 * r + c + 1);
            if (r + 1 < 3) e.emplace_back(3 * r + c, 3 * (r + 1) + c);
        }
    return MedianGraph::build(e, true);
}

MedianGraph tree12() {
    return MedianGraph::build(
        {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {0, 5}, {5, 6}, {6, 7}, {3, 8}, {8, 9}, {9, 10}, {2, 11}},
        true);
}

std::set<int> bits_set(const Bits& b) {
    std::vector<int> v = to_vector(b);
    return std::set<int>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("normal path on the grid diagonal: square then edge", "[normal_paths]") {
    MedianGraph g = grid3x3();
    NormalPath p = normal_cube_path(g, 0, 7);
    REQUIRE(p.vertices == std::vector<int>{0, 4, 7});
    REQUIRE(p.cubes.size() == 2);
    REQUIRE(p.cubes[0].size() == 2);
    REQUIRE(p.cubes[1].size() == 1);
}

TEST_CASE("normal path on a path graph is the edge sequence", "[normal_paths]") {
    MedianGraph g = MedianGraph::build(path_edges(4), true);
    NormalPath p = normal_cube_path(g, 0, 3);
    REQUIRE(p.length() == 3);
    for (const auto& cube : p.cubes) REQUIRE(cube.size() == 1);
    REQUIRE(p.vertices == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("degenerate normal path", "[normal_paths]") {
    MedianGraph g = grid3x3();
    NormalPath p = normal_cube_path(g, 4, 4);
    REQUIRE(p.cubes.empty());
    REQUIRE(p.vertices == std::vector<int>{4});
    REQUIRE(p.vertex_at(0) == 4);
    REQUIRE(p.vertex_at(5) == 4);
}

TEST_CASE("both d_nor modes agree and cross-corner value is 2", "[normal_paths]") {
    MedianGraph g = grid3x3();
    REQUIRE(normal_distance(g, 0, 8, DnorMode::path) == 2);
    REQUIRE(normal_distance(g, 0, 8, DnorMode::chain) == 2);
    REQUIRE(normal_distance(g, 8, 0, DnorMode::path) == 2);
    for (int x = 0; x < g.n(); ++x)
        for (int y = 0; y < g.n(); ++y)
            REQUIRE(normal_distance(g, x, y, DnorMode::path) ==
                    normal_distance_chain(g, x, y));
}

TEST_CASE("on trees the normal metric is the graph metric", "[normal_paths]") {
    MedianGraph g = tree12();
    NormalGeometry geo(g);
    for (int x = 0; x < g.n(); ++x)
        for (int y = 0; y < g.n(); ++y) REQUIRE(geo.dnor(x, y) == g.dist(x, y));
}

TEST_CASE("normal metric axioms and squeeze against the graph metric", "[normal_paths]") {
    MedianGraph g = grid3x3();
    NormalGeometry geo(g);
    int eta = g.dimension();
    for (int x = 0; x < g.n(); ++x)
        for (int y = 0; y < g.n(); ++y) {
            int dn = geo.dnor(x, y);
            REQUIRE(dn == geo.dnor(y, x));
            REQUIRE((dn == 0) == (x == y));
            REQUIRE(dn <= g.dist(x, y));
            REQUIRE(g.dist(x, y) <= eta * dn);
            for (int z = 0; z < g.n(); ++z)
                REQUIRE(geo.dnor(x, y) <= geo.dnor(x, z) + geo.dnor(z, y));
        }
}

TEST_CASE("normal balls and spheres on frozen instances", "[normal_paths]") {
    MedianGraph g = grid3x3();
    NormalGeometry geo(g);
    REQUIRE(bits_set(geo.ball(0, 1)) == std::set<int>{0, 1, 3, 4});
    REQUIRE(bits_set(geo.ball(4, 0)) == std::set<int>{4});
    MedianGraph p = MedianGraph::build(path_edges(4), true);
    NormalGeometry pg(p);
    REQUIRE(bits_set(pg.sphere(0, 1)) == std::set<int>{1});
}

TEST_CASE("suffix of a normal path is normal", "[normal_paths]") {
    for (const MedianGraph& g : {grid3x3(), tree12()}) {
        NormalGeometry geo(g);
        for (int x = 0; x < g.n(); ++x)
            for (int y = 0; y < g.n(); ++y) {
                NormalPath p = geo.path(x, y);
                for (int k = 0; k <= p.length(); ++k) {
                    NormalPath tail = geo.path(p.vertex_at(k), y);
                    REQUIRE(tail.length() == p.length() - k);
                    for (int i = 0; i < tail.length(); ++i)
                        REQUIRE(tail.cubes[i] == p.cubes[k + i]);
                }
            }
    }
}

TEST_CASE("each wall is crossed exactly once and cubes partition the separators",
          "[normal_paths]") {
    MedianGraph g = grid3x3();
    for (int x = 0; x < g.n(); ++x)
        for (int y = 0; y < g.n(); ++y) {
            NormalPath p = normal_cube_path(g, x, y);
            std::vector<int> crossed;
            for (const auto& cube : p.cubes) crossed.insert(crossed.end(), cube.begin(), cube.end());
            std::vector<int> expect = g.separating_walls(x, y);
            std::sort(crossed.begin(), crossed.end());
            REQUIRE(crossed == expect);
        }
}

TEST_CASE("fellow traveller with a common source stays within distance one",
          "[normal_paths]") {
    for (const MedianGraph& g : {grid3x3(), tree12()})
        for (int x = 0; x < g.n(); ++x)
            for (int y = 0; y < g.n(); ++y)
                for (int y2 = 0; y2 < g.n(); ++y2) {
                    if (g.dist(y, y2) > 1) continue;
                    NormalPath a = normal_cube_path(g, x, y);
                    NormalPath b = normal_cube_path(g, x, y2);
                    int len = std::max(a.length(), b.length());
                    for (int k = 0; k <= len; ++k)
                        REQUIRE(g.dist(a.vertex_at(k), b.vertex_at(k)) <= 1);
                }
}

TEST_CASE("fellow traveller with both endpoints free reaches distance two",
          "[normal_paths]") {
    MedianGraph g = grid3x3();
    // 0->2 runs along the row in two edge cubes while 1->5 takes one square;
    // their middle vertices sit a full diagonal apart.
    NormalPath a = normal_cube_path(g, 0, 2);
    NormalPath b = normal_cube_path(g, 1, 5);
    REQUIRE(a.vertices == std::vector<int>{0, 1, 2});
    REQUIRE(b.vertices == std::vector<int>{1, 5});
    REQUIRE(g.dist(a.vertex_at(1), b.vertex_at(1)) == 2);
    int worst = 0;
    for (int x = 0; x < g.n(); ++x)
        for (int y = 0; y < g.n(); ++y)
            for (int x2 = 0; x2 < g.n(); ++x2)
                for (int y2 = 0; y2 < g.n(); ++y2) {
                    if (g.dist(x, x2) > 1 || g.dist(y, y2) > 1) continue;
                    NormalPath p = normal_cube_path(g, x, y);
                    NormalPath q = normal_cube_path(g, x2, y2);
                    int len = std::max(p.length(), q.length());
                    for (int k = 0; k <= len; ++k)
                        worst = std::max(worst, g.dist(p.vertex_at(k), q.vertex_at(k)));
                }
    REQUIRE(worst == 2);
}

TEST_CASE("normal balls are convex", "[normal_paths]") {
    MedianGraph g = grid3x3();
    NormalGeometry geo(g);
    for (int x = 0; x < g.n(); ++x)
        for (int n = 0; n <= 4; ++n) {
            Bits ball = geo.ball(x, n);
            for (int a : to_vector(ball))
                for (int b : to_vector(ball))
                    REQUIRE(g.interval(a, b).is_subset_of(ball));
        }
}

TEST_CASE("gate is the farthest interval point in the normal ball", "[normal_paths]") {
    MedianGraph g = grid3x3();
    NormalGeometry geo(g);
    REQUIRE(geo.gate(0, 7, 1, true) == 4);
    for (int x0 = 0; x0 < g.n(); ++x0)
        for (int x = 0; x < g.n(); ++x) {
            int dn = geo.dnor(x0, x);
            for (int n = 0; n <= dn; ++n) {
                int v = geo.gate(x0, x, n, true);
                if (n == 0) REQUIRE(v == x0);
                if (n == dn) REQUIRE(v == x);
            }
            REQUIRE_THROWS_AS(geo.gate(x0, x, dn + 1), precondition_violation);
        }
}

TEST_CASE("sphere decomposition on the frozen grid queries", "[normal_paths]") {
    MedianGraph g = grid3x3();
    NormalGeometry geo(g);
    SphereDecomposition d1 = geo.decompose_sphere(0, 8, 1);
    REQUIRE(d1.gate == 4);
    std::set<int> xhs;
    Bits uni(g.n());
    for (const SpherePart& part : d1.parts) {
        xhs.insert(part.x_h);
        uni |= g.interval(part.x_h, d1.gate);
    }
    REQUIRE(xhs == std::set<int>{1, 3});
    REQUIRE(bits_set(uni) == std::set<int>{1, 3, 4});

    SphereDecomposition d2 = geo.decompose_sphere(0, 8, 2);
    REQUIRE(d2.gate == 8);
    std::set<std::set<int>> parts;
    for (const SpherePart& part : d2.parts)
        parts.insert(bits_set(g.interval(part.x_h, d2.gate)));
    REQUIRE(parts == std::set<std::set<int>>{{6, 7, 8}, {2, 5, 8}});
}

TEST_CASE("sphere decomposition is exact with few parts that drop dimension",
          "[normal_paths]") {
    for (const MedianGraph& g : {grid3x3(), tree12()}) {
        NormalGeometry geo(g);
        int eta = g.dimension();
        for (int x0 = 0; x0 < g.n(); ++x0)
            for (int x = 0; x < g.n(); ++x) {
                int dn = geo.dnor(x0, x);
                int dim_interval = g.dimension(x0, x);
                for (int n = 1; n <= dn; ++n) {
                    SphereDecomposition dec = geo.decompose_sphere(x0, x, n);
                    REQUIRE(static_cast<int>(dec.parts.size()) <= eta);
                    Bits expect = g.interval(x0, x) & geo.sphere(x0, n);
                    Bits uni(g.n());
                    for (const SpherePart& part : dec.parts) {
                        uni |= g.interval(part.x_h, dec.gate);
                        REQUIRE(g.dimension(part.x_h, dec.gate) < dim_interval);
                    }
                    REQUIRE(uni == expect);
                }
            }
    }
}

TEST_CASE("tree spheres decompose into the single gate part", "[normal_paths]") {
    MedianGraph g = tree12();
    NormalGeometry geo(g);
    for (int x0 = 0; x0 < g.n(); ++x0)
        for (int x = 0; x < g.n(); ++x)
            for (int n = 1; n <= geo.dnor(x0, x); ++n) {
                SphereDecomposition dec = geo.decompose_sphere(x0, x, n);
                REQUIRE(dec.parts.size() == 1);
                REQUIRE(dec.parts[0].x_h == dec.gate);
            }
}

TEST_CASE("h-map frozen values and basepoint fixability", "[normal_paths]") {
    MedianGraph g = grid3x3();
    NormalGeometry geo(g);
    REQUIRE(geo.h_map(0, 1, 8) == 0);  // d_nor(8,0)=2 < 3
    MedianGraph p = MedianGraph::build(path_edges(7), true);
    NormalGeometry pg(p);
    REQUIRE(pg.h_map(0, 1, 6) == 3);
    REQUIRE(pg.h_map(0, 1, 0) == 0);
    REQUIRE(pg.h_map(0, 2, 6) == 0);  // d_nor = 6 = 3l for l = 2
    REQUIRE_THROWS_AS(pg.h_map(0, 0, 3), precondition_violation);
}

TEST_CASE("h-map images stay in the interval toward the basepoint", "[normal_paths]") {
    for (const MedianGraph& g : {grid3x3(), tree12()}) {
        NormalGeometry geo(g);
        for (int l : {1, 2})
            for (int x0 = 0; x0 < g.n(); ++x0)
                for (int x = 0; x < g.n(); ++x)
                    for (int y = 0; y < g.n(); ++y) {
                        if (g.dist(x, y) > 3 * l) continue;
                        REQUIRE(g.in_interval(geo.h_map(x0, l, y), x0, x));
                    }
    }
}
