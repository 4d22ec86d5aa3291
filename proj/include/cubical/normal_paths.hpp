#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cubical/core.hpp"
#include "cubical/median_graph.hpp"

namespace cubical {

// The greedy diagonal cube sequence from source to target. A path of m cubes
// has vertices v_0..v_m with v_0 = source, v_m = target; cube i is recorded as
// its set of dual wall ids, ascending.
struct NormalPath {
    int source = 0;
    int target = 0;
    std::vector<std::vector<int>> cubes;
    std::vector<int> vertices;

    int length() const { return static_cast<int>(cubes.size()); }

    // k-th vertex, clamped to the endpoint; paths sit at their target.
    int vertex_at(int k) const {
        auto idx = std::min<std::size_t>(static_cast<std::size_t>(k), vertices.size() - 1);
        return vertices[idx];
    }
};

struct SpherePart {
    int wall = -1;
    int x_h = -1;  // the d(x0,.)-minimizer of F_h; the part is the interval [x_h, gate]
};

// [x0,x] n S_nor(x0,n) written as a union of intervals [x_h, gate], one per
// wall of the n-th cube on the normal path from x0 to x.
struct SphereDecomposition {
    int basepoint = 0;
    int apex = 0;
    int radius = 0;
    int gate = 0;
    std::vector<SpherePart> parts;  // wall ids ascending
};

enum class DnorMode { path, chain };

inline NormalPath normal_cube_path(const MedianGraph& g, int x, int y) {
    NormalPath p;
    p.source = x;
    p.target = y;
    p.vertices.push_back(x);
    int cur = x;
    while (cur != y) {
        // All separating walls dual to an edge at the current vertex span the
        // next cube; the next vertex is the corner diagonally toward y.
        std::vector<int> cube;
        for (auto [w, nbr] : g.incident_walls(cur)) {
            (void)nbr;
            if (g.separates(w, cur, y)) cube.push_back(w);
        }
        if (cube.empty())
            throw error("normal path stalled at vertex " + std::to_string(cur));
        for (std::size_t i = 0; i < cube.size(); ++i)
            for (std::size_t j = i + 1; j < cube.size(); ++j)
                if (!g.crossing(cube[i], cube[j]))
                    throw error("candidate wall set is not pairwise crossing (corrupt graph)");

        Bits remaining(g.wall_count());
        for (int w : cube) remaining.set(w);
        int v = cur;
        std::size_t consumed = 0;
        while (consumed < cube.size()) {
            bool advanced = false;
            for (auto [w, nbr] : g.incident_walls(v))
                if (remaining.test(w)) {
                    remaining.reset(w);
                    v = nbr;
                    ++consumed;
                    advanced = true;
                    break;
                }
            if (!advanced)
                throw error("cube traversal stalled (corrupt graph)");
        }
        if (g.dist(cur, v) != static_cast<int>(cube.size()) || !g.in_interval(v, cur, y))
            throw error("cube traversal left the interval (corrupt graph)");

        p.cubes.push_back(std::move(cube));
        p.vertices.push_back(v);
        cur = v;
    }
    return p;
}

// Longest chain in the separation poset (H(x,y), <=) with minus sides taken at
// x. Walls are ordered by the size of their x-side: a strict halfspace
// containment forces a strictly smaller side, and incomparable walls cross.
inline int normal_distance_chain(const MedianGraph& g, int x, int y) {
    std::vector<int> walls = g.separating_walls(x, y);
    std::sort(walls.begin(), walls.end(), [&](int a, int b) {
        int sa = g.side_size_at(a, x), sb = g.side_size_at(b, x);
        return sa != sb ? sa < sb : a < b;
    });
    int best = 0;
    std::vector<int> longest(walls.size(), 1);
    for (std::size_t i = 0; i < walls.size(); ++i) {
        int size_i = g.side_size_at(walls[i], x);
        for (std::size_t j = 0; j < i; ++j)
            if (g.side_size_at(walls[j], x) < size_i && !g.crossing(walls[i], walls[j]))
                longest[i] = std::max(longest[i], longest[j] + 1);
        best = std::max(best, longest[i]);
    }
    return best;
}

inline int normal_distance(const MedianGraph& g, int x, int y, DnorMode mode) {
    if (mode == DnorMode::path) return normal_cube_path(g, x, y).length();
    return normal_distance_chain(g, x, y);
}

// Session cache for normal-metric queries over one immutable graph. Rows are
// memoized per source; the cache is session-local and not synchronized.
class NormalGeometry {
public:
    explicit NormalGeometry(const MedianGraph& g) : g_(&g) {}

    const MedianGraph& graph() const { return *g_; }

    int dnor(int x, int y) const { return row(x)[y]; }

    const std::vector<int>& row(int x) const {
        auto it = rows_.find(x);
        if (it == rows_.end()) {
            std::vector<int> r(g_->n());
            for (int y = 0; y < g_->n(); ++y) r[y] = normal_distance_chain(*g_, x, y);
            it = rows_.emplace(x, std::move(r)).first;
        }
        return it->second;
    }

    NormalPath path(int x, int y) const { return normal_cube_path(*g_, x, y); }

    Bits ball(int x, int n) const {
        const auto& r = row(x);
        Bits b(g_->n());
        for (int y = 0; y < g_->n(); ++y)
            if (r[y] <= n) b.set(y);
        return b;
    }

    Bits sphere(int x, int n) const {
        const auto& r = row(x);
        Bits b(g_->n());
        for (int y = 0; y < g_->n(); ++y)
            if (r[y] == n) b.set(y);
        return b;
    }

    // The n-th vertex of the normal path from x0 to x; with cross_check, it is
    // re-derived as the unique d(x0,.)-maximizer of [x0,x] n B_nor(x0,n).
    int gate(int x0, int x, int n, bool cross_check = false) const {
        if (n < 0 || dnor(x0, x) < n)
            throw precondition_violation("gate radius exceeds d_nor(x0,x)");
        int v = path(x0, x).vertex_at(n);
        if (cross_check) {
            Bits region = g_->interval(x0, x) & ball(x0, n);
            int best = -1;
            bool unique = true;
            for_each_bit(region, [&](int w) {
                if (best < 0 || g_->dist(x0, w) > g_->dist(x0, best)) {
                    best = w;
                    unique = true;
                } else if (g_->dist(x0, w) == g_->dist(x0, best)) {
                    unique = false;
                }
            });
            if (!unique || best != v)
                throw error("gate characterizations disagree at (" + std::to_string(x0) +
                            "," + std::to_string(x) + "," + std::to_string(n) + ")");
        }
        return v;
    }

    SphereDecomposition decompose_sphere(int x0, int x, int n) const {
        if (n < 1 || dnor(x0, x) < n)
            throw precondition_violation("sphere decomposition needs 1 <= n <= d_nor(x0,x)");
        NormalPath p = path(x0, x);
        SphereDecomposition dec;
        dec.basepoint = x0;
        dec.apex = x;
        dec.radius = n;
        dec.gate = p.vertices[n];
        Bits bnor = ball(x0, n);
        for (int h : p.cubes[n - 1]) {
            const Bits& far = far_side(h, x0);
            Bits f = g_->interval(x0, dec.gate) & far;
            if (!f.test(dec.gate))
                throw error("gate escapes its own sphere part (corrupt state)");
            int xh = -1;
            bool unique = true;
            for_each_bit(f, [&](int w) {
                if (xh < 0 || g_->dist(x0, w) < g_->dist(x0, xh)) {
                    xh = w;
                    unique = true;
                } else if (g_->dist(x0, w) == g_->dist(x0, xh)) {
                    unique = false;
                }
            });
            if (xh < 0 || !unique)
                throw error("F_h minimizer is not unique (corrupt state)");

            // x_h must be the unique point of B_nor(x0,n) beyond h such that no
            // wall crossing h separates it from x0.
            Bits cand = bnor & far;
            for_each_bit(g_->crossing_row(h), [&](int k) {
                cand &= near_side(k, x0);
            });
            if (cand.count() != 1 || !cand.test(xh))
                throw error("x_h uniqueness predicate fails at wall " + std::to_string(h));

            dec.parts.push_back({h, xh});
        }
        return dec;
    }

    // The 3l-th vertex on the normal path from x toward the basepoint, or the
    // basepoint itself when the path is shorter than 3l cubes.
    int h_map(int x0, int l, int x) const {
        if (l < 1) throw precondition_violation("h_map needs l >= 1");
        if (dnor(x, x0) < 3 * l) return x0;
        return path(x, x0).vertices[static_cast<std::size_t>(3) * l];
    }

    const Bits& near_side(int h, int at) const {
        const Hyperplane& w = g_->walls()[h];
        return w.minus.test(at) ? w.minus : w.plus;
    }

    const Bits& far_side(int h, int at) const {
        const Hyperplane& w = g_->walls()[h];
        return w.minus.test(at) ? w.plus : w.minus;
    }

private:
    const MedianGraph* g_;
    mutable std::unordered_map<int, std::vector<int>> rows_;
};

}  // namespace cubical
