#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cubical/core.hpp"

namespace cubical {

// A wall of the cube complex: a complementary pair of convex halfspaces.
// `minus` is the side containing vertex 0 (a graph-wide convention; poset
// queries re-anchor sides at a chosen basepoint).
struct Hyperplane {
    int id = -1;
    Bits minus;
    Bits plus;
    std::vector<std::pair<int, int>> rep_edges;  // each (u,v) with u on minus side
};

// Interval [a,b] together with its separating walls and their separation
// order: h <= k iff the a-side of h is contained in the a-side of k.
struct IntervalView {
    int a = 0, b = 0;
    Bits members;
    std::vector<int> walls;          // hyperplane ids, ascending
    std::vector<Bits> leq;           // leq[i] = local indices j with walls[i] <= walls[j]
    std::vector<Bits> crossing_local;  // local crossing rows

    bool less(std::size_t i, std::size_t j) const { return i != j && leq[i].test(j); }
    bool incomparable(std::size_t i, std::size_t j) const {
        return i != j && !leq[i].test(j) && !leq[j].test(i);
    }
};

namespace detail {

// Exact maximum clique, branch and bound with a greedy colouring bound and a
// pivot-style candidate ordering. Desk-scale wall counts keep this safe.
class MaxClique {
public:
    MaxClique(const std::vector<Bits>& adj, std::uint64_t budget)
        : adj_(adj), budget_(budget) {}

    int run(Bits cand) {
        best_ = 0;
        expand(std::move(cand), 0);
        return best_;
    }

private:
    void expand(Bits cand, int size) {
        if (++expansions_ > budget_)
            throw budget_exceeded("maximum-clique search budget exceeded");
        if (cand.none()) {
            best_ = std::max(best_, size);
            return;
        }
        // Greedy colouring upper bound; vertices emitted colour-class by
        // colour-class so deeper branches see tighter bounds first.
        std::vector<int> order;
        std::vector<int> bound;
        Bits uncoloured = cand;
        int colour = 0;
        while (uncoloured.any()) {
            ++colour;
            Bits avail = uncoloured;
            while (avail.any()) {
                auto v = avail.find_first();
                order.push_back(static_cast<int>(v));
                bound.push_back(colour);
                avail &= ~adj_[v];
                avail.reset(v);
                uncoloured.reset(v);
            }
        }
        for (std::size_t i = order.size(); i-- > 0;) {
            if (size + bound[i] <= best_) return;
            int v = order[i];
            Bits next = cand & adj_[v];
            best_ = std::max(best_, size + 1);
            expand(std::move(next), size + 1);
            cand.reset(v);
        }
    }

    const std::vector<Bits>& adj_;
    std::uint64_t budget_;
    std::uint64_t expansions_ = 0;
    int best_ = 0;
};

}  // namespace detail

class MedianGraph {
public:
    // Builds from an explicit vertex count (isolated ids are rejected by the
    // connectivity check; count 1 with no edges is the one-point complex).
    static MedianGraph build_with_count(int vertex_count,
                                        std::vector<std::pair<int, int>> edge_list,
                                        bool validate,
                                        int validation_cap = kDefaultValidationCap) {
        MedianGraph g;
        g.construct(vertex_count, std::move(edge_list), validate, validation_cap);
        return g;
    }

    static MedianGraph build(std::vector<std::pair<int, int>> edge_list,
                             bool validate,
                             int validation_cap = kDefaultValidationCap) {
        if (edge_list.empty()) throw invalid_input("edge list must be nonempty");
        int n = 0;
        for (auto [u, v] : edge_list) n = std::max({n, u + 1, v + 1});
        return build_with_count(n, std::move(edge_list), validate, validation_cap);
    }

    static MedianGraph single_vertex() {
        return build_with_count(1, {}, true);
    }

    static constexpr int kDefaultValidationCap = 400;

    int n() const { return n_; }
    bool is_validated() const { return validated_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::map<std::string, std::string>& labels() const { return labels_; }
    void set_labels(std::map<std::string, std::string> labels) { labels_ = std::move(labels); }

    int dist(int u, int v) const { return dist_[static_cast<std::size_t>(u) * n_ + v]; }

    // Betweenness set {z : d(a,z) + d(z,b) = d(a,b)}, precomputed.
    const Bits& interval(int a, int b) const {
        return intervals_[static_cast<std::size_t>(a) * n_ + b];
    }

    bool in_interval(int z, int a, int b) const { return interval(a, b).test(z); }

    // The unique point of [x,y] n [y,z] n [z,x].
    int median(int x, int y, int z) const {
        if (!validated_)
            throw precondition_violation("median requires a validated graph");
        Bits m = interval(x, y);
        m &= interval(y, z);
        m &= interval(z, x);
        return static_cast<int>(m.find_first());
    }

    const std::vector<Hyperplane>& walls() const { return walls_; }
    int wall_count() const { return static_cast<int>(walls_.size()); }

    int wall_of_edge(int u, int v) const {
        auto it = edge_wall_.find(edge_key(u, v));
        if (it == edge_wall_.end()) throw invalid_input("not an edge");
        return it->second;
    }

    // (wall id, neighbour) for every edge at v.
    const std::vector<std::pair<int, int>>& incident_walls(int v) const {
        return incident_[v];
    }

    bool separates(int h, int x, int y) const {
        return walls_[h].minus.test(x) != walls_[h].minus.test(y);
    }

    // Size of the side of wall h containing x.
    int side_size_at(int h, int x) const {
        int m = minus_size_[h];
        return walls_[h].minus.test(x) ? m : n_ - m;
    }

    // a-side of h contained in a-side of k (both must separate some common pair
    // for the order to be meaningful; callers pass walls of one interval).
    bool wall_leq_at(int h, int k, int a) const {
        const Bits& hs = walls_[h].minus.test(a) ? walls_[h].minus : walls_[h].plus;
        const Bits& ks = walls_[k].minus.test(a) ? walls_[k].minus : walls_[k].plus;
        return hs.is_subset_of(ks);
    }

    bool crossing(int h, int k) const { return crossing_[h].test(k); }
    const Bits& crossing_row(int h) const { return crossing_[h]; }

    std::vector<int> separating_walls(int x, int y) const {
        std::vector<int> out;
        for (const auto& w : walls_)
            if (w.minus.test(x) != w.minus.test(y)) out.push_back(w.id);
        return out;
    }

    IntervalView interval_view(int a, int b) const {
        IntervalView iv;
        iv.a = a;
        iv.b = b;
        iv.members = interval(a, b);
        iv.walls = separating_walls(a, b);
        std::size_t w = iv.walls.size();
        iv.leq.assign(w, Bits(w));
        iv.crossing_local.assign(w, Bits(w));
        for (std::size_t i = 0; i < w; ++i)
            for (std::size_t j = 0; j < w; ++j) {
                if (i != j && wall_leq_at(iv.walls[i], iv.walls[j], a)) iv.leq[i].set(j);
                if (crossing(iv.walls[i], iv.walls[j])) iv.crossing_local[i].set(j);
            }
        return iv;
    }

    // Rank: maximum number of pairwise crossing walls, exact. Computed once at
    // build so concurrent readers share an immutable value.
    int dimension() const { return global_dim_; }

    // dim[a,b]: maximum crossing clique among the walls separating a from b.
    int dimension(int a, int b, std::uint64_t clique_budget = kDefaultCliqueBudget) const {
        Bits cand(walls_.size());
        for (const auto& w : walls_)
            if (w.minus.test(a) != w.minus.test(b)) cand.set(w.id);
        detail::MaxClique mc(crossing_, clique_budget);
        return mc.run(std::move(cand));
    }

    static constexpr std::uint64_t kDefaultCliqueBudget = 50'000'000;

private:
    static std::uint64_t edge_key(int u, int v) {
        if (u > v) std::swap(u, v);
        return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
    }

    void construct(int vertex_count,
                   std::vector<std::pair<int, int>> edge_list,
                   bool validate,
                   int validation_cap) {
        if (vertex_count <= 0) throw invalid_input("vertex count must be positive");
        n_ = vertex_count;
        for (auto& [u, v] : edge_list) {
            if (u == v) throw invalid_input("self loop");
            if (u < 0 || v < 0 || u >= n_ || v >= n_) throw invalid_input("vertex id out of range");
            if (u > v) std::swap(u, v);
        }
        std::sort(edge_list.begin(), edge_list.end());
        if (std::adjacent_find(edge_list.begin(), edge_list.end()) != edge_list.end())
            throw invalid_input("duplicate edge");
        edges_ = std::move(edge_list);

        adjacency_.assign(n_, {});
        for (auto [u, v] : edges_) {
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }

        compute_distances();
        compute_intervals();

        if (validate) {
            if (n_ > validation_cap)
                throw budget_exceeded("median validation cap exceeded (" +
                                      std::to_string(n_) + " > " + std::to_string(validation_cap) +
                                      " vertices)");
            check_median_axiom();
            validated_ = true;
        }

        extract_hyperplanes();
    }

    void compute_distances() {
        dist_.assign(static_cast<std::size_t>(n_) * n_, -1);
        std::vector<int> queue(n_);
        for (int s = 0; s < n_; ++s) {
            int* row = &dist_[static_cast<std::size_t>(s) * n_];
            row[s] = 0;
            int head = 0, tail = 0;
            queue[tail++] = s;
            while (head < tail) {
                int u = queue[head++];
                for (int v : adjacency_[u])
                    if (row[v] < 0) {
                        row[v] = row[u] + 1;
                        queue[tail++] = v;
                    }
            }
            if (tail != n_) throw disconnected_graph("graph is not connected");
        }
    }

    void compute_intervals() {
        intervals_.assign(static_cast<std::size_t>(n_) * n_, Bits(n_));
        for (int a = 0; a < n_; ++a) {
            const int* da = &dist_[static_cast<std::size_t>(a) * n_];
            for (int b = a; b < n_; ++b) {
                const int* db = &dist_[static_cast<std::size_t>(b) * n_];
                Bits& m = intervals_[static_cast<std::size_t>(a) * n_ + b];
                for (int z = 0; z < n_; ++z)
                    if (da[z] + db[z] == da[b]) m.set(z);
                if (b != a) intervals_[static_cast<std::size_t>(b) * n_ + a] = m;
            }
        }
    }

    void check_median_axiom() {
        for (int x = 0; x < n_; ++x)
            for (int y = x; y < n_; ++y) {
                const Bits& ixy = interval(x, y);
                for (int z = y; z < n_; ++z) {
                    Bits m = ixy;
                    m &= interval(y, z);
                    m &= interval(z, x);
                    if (m.count() != 1)
                        throw median_axiom_violation(
                            x, y, z, to_vector(m),
                            "median axiom fails at triple (" + std::to_string(x) + "," +
                                std::to_string(y) + "," + std::to_string(z) +
                                "): interval triple intersection has size " +
                                std::to_string(m.count()));
                }
            }
    }

    void extract_hyperplanes() {
        std::map<Bits, int> seen;
        for (auto [u, v] : edges_) {
            Bits side_u(n_);
            const int* du = &dist_[static_cast<std::size_t>(u) * n_];
            const int* dv = &dist_[static_cast<std::size_t>(v) * n_];
            for (int w = 0; w < n_; ++w)
                if (du[w] < dv[w]) side_u.set(w);
            bool u_on_minus = side_u.test(0);
            Bits minus = u_on_minus ? side_u : ~side_u;
            auto [it, fresh] = seen.emplace(minus, static_cast<int>(walls_.size()));
            if (fresh) {
                Hyperplane h;
                h.id = it->second;
                h.minus = std::move(minus);
                h.plus = ~h.minus;
                walls_.push_back(std::move(h));
            }
            int id = it->second;
            walls_[id].rep_edges.emplace_back(u_on_minus ? u : v, u_on_minus ? v : u);
            edge_wall_.emplace(edge_key(u, v), id);
        }

        minus_size_.resize(walls_.size());
        for (const auto& w : walls_) {
            minus_size_[w.id] = static_cast<int>(w.minus.count());
            check_halfspace_convex(w.minus, w.id);
            check_halfspace_convex(w.plus, w.id);
        }

        crossing_.assign(walls_.size(), Bits(walls_.size()));
        for (std::size_t h = 0; h < walls_.size(); ++h)
            for (std::size_t k = h + 1; k < walls_.size(); ++k) {
                const Bits& hm = walls_[h].minus;
                const Bits& km = walls_[k].minus;
                bool cross = (hm & km).any() && (hm & ~km).any() && (~hm & km).any() &&
                             (~hm & ~km).any();
                if (cross) {
                    crossing_[h].set(k);
                    crossing_[k].set(h);
                }
            }

        incident_.assign(n_, {});
        for (const auto& w : walls_)
            for (auto [u, v] : w.rep_edges) {
                incident_[u].emplace_back(w.id, v);
                incident_[v].emplace_back(w.id, u);
            }
        for (auto& inc : incident_) std::sort(inc.begin(), inc.end());

        Bits all(walls_.size());
        all.set();
        detail::MaxClique mc(crossing_, kDefaultCliqueBudget);
        global_dim_ = mc.run(std::move(all));
    }

    void check_halfspace_convex(const Bits& side, int wall_id) const {
        for (auto a = side.find_first(); a != Bits::npos; a = side.find_next(a))
            for (auto b = side.find_next(a); b != Bits::npos; b = side.find_next(b)) {
                Bits outside = interval(static_cast<int>(a), static_cast<int>(b));
                outside -= side;
                if (outside.any())
                    throw convexity_violation(
                        "halfspace of wall " + std::to_string(wall_id) +
                        " is not convex: interval [" + std::to_string(a) + "," +
                        std::to_string(b) + "] escapes (non-median input)");
            }
    }

    int n_ = 0;
    bool validated_ = false;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<int> dist_;
    std::vector<Bits> intervals_;
    std::vector<Hyperplane> walls_;
    std::vector<int> minus_size_;
    std::vector<Bits> crossing_;
    std::vector<std::vector<std::pair<int, int>>> incident_;
    std::map<std::uint64_t, int> edge_wall_;
    std::map<std::string, std::string> labels_;
    int global_dim_ = 0;
};

}  // namespace cubical
