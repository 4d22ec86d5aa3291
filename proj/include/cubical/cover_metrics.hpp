#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cubical/core.hpp"

namespace cubical {

// Finite metric space over dense point ids. D is the distance type; integer
// distances use long long, exact fractional ones boost::rational. All
// comparisons are exact.
template <class D>
class MetricSpace {
public:
    static MetricSpace from_table(std::vector<std::vector<D>> table) {
        MetricSpace s;
        s.d_ = std::move(table);
        const int n = s.n();
        if (n == 0) throw invalid_input("metric space needs at least one point");
        const D zero{};
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(s.d_[i].size()) != n)
                throw invalid_input("distance table is not square");
            if (!(s.d_[i][i] == zero))
                throw invalid_input("distance table has a nonzero diagonal");
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (s.d_[i][j] < zero) throw invalid_input("negative distance");
                if (!(s.d_[i][j] == s.d_[j][i]))
                    throw invalid_input("distance table is not symmetric");
            }
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j)
                    if (s.d_[i][k] + s.d_[k][j] < s.d_[i][j])
                        throw invalid_input("triangle inequality fails");
        return s;
    }

    int n() const { return static_cast<int>(d_.size()); }
    const D& dist(int x, int y) const { return d_[x][y]; }

    Bits ball(int x, const D& r) const {
        Bits b(n());
        for (int y = 0; y < n(); ++y)
            if (!(r < d_[x][y])) b.set(y);
        return b;
    }

    D set_diameter(const Bits& s) const {
        std::vector<int> pts = to_vector(s);
        D best{};
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                best = std::max(best, d_[pts[i]][pts[j]]);
        return best;
    }

    D diameter() const {
        Bits all(n());
        all.set();
        return set_diameter(all);
    }

    // Sorted ascending; always contains 0.
    std::vector<D> realized_distances() const {
        std::set<D> vals;
        for (int i = 0; i < n(); ++i)
            for (int j = i; j < n(); ++j) vals.insert(d_[i][j]);
        return std::vector<D>(vals.begin(), vals.end());
    }

private:
    std::vector<std::vector<D>> d_;
};

struct Cover {
    std::vector<Bits> sets;
    std::vector<std::string> names;  // empty, or one per set
};

inline Bits cover_union(const Cover& u, int n) {
    Bits b(n);
    for (const Bits& s : u.sets) {
        if (static_cast<int>(s.size()) != n)
            throw invalid_input("cover element sized for a different point set");
        b |= s;
    }
    return b;
}

template <class D>
bool is_cover(const MetricSpace<D>& s, const Cover& u) {
    return cover_union(u, s.n()).count() == static_cast<std::size_t>(s.n());
}

template <class D>
struct CoverStats {
    D mesh{};
    int multiplicity = 0;
    int r_multiplicity = 0;
};

template <class D>
CoverStats<D> cover_metrics(const MetricSpace<D>& s, const Cover& u, const D& r) {
    if (!is_cover(s, u)) throw invalid_input("not a cover");
    if (!(D{} < r)) throw invalid_input("cover metrics need r > 0");
    CoverStats<D> out;
    for (const Bits& e : u.sets) out.mesh = std::max(out.mesh, s.set_diameter(e));
    for (int x = 0; x < s.n(); ++x) {
        Bits bx = s.ball(x, r);
        int m = 0, mr = 0;
        for (const Bits& e : u.sets) {
            if (e.test(x)) ++m;
            if (e.intersects(bx)) ++mr;
        }
        out.multiplicity = std::max(out.multiplicity, m);
        out.r_multiplicity = std::max(out.r_multiplicity, mr);
    }
    return out;
}

namespace detail {

// Enumerates maximal cliques of adj (Bron-Kerbosch with pivoting); stops early
// when visit returns false. Returns false on early stop.
template <class F>
bool maximal_cliques(const std::vector<Bits>& adj, Bits r, Bits p, Bits x,
                     std::uint64_t& budget, F&& visit) {
    if (budget == 0) throw budget_exceeded("maximal-subset enumeration budget exceeded");
    --budget;
    if (p.none() && x.none()) return visit(r);
    Bits px = p | x;
    int pivot = -1;
    std::size_t best_deg = 0;
    for_each_bit(px, [&](int u) {
        std::size_t deg = (p & adj[u]).count();
        if (pivot < 0 || deg > best_deg) {
            pivot = u;
            best_deg = deg;
        }
    });
    Bits cand = p - adj[pivot];
    for (int v : to_vector(cand)) {
        Bits r2 = r;
        r2.set(v);
        if (!maximal_cliques(adj, std::move(r2), p & adj[v], x & adj[v], budget, visit))
            return false;
        p.reset(v);
        x.set(v);
    }
    return true;
}

}  // namespace detail

enum class LebesgueMode { exact, ball_bound };

// Largest realized threshold at which the cover still absorbs everything of
// that diameter. exact: every subset of diameter <= lambda lies in one element
// (equivalently every maximal such subset does, which is what gets
// enumerated); ball_bound: every ball B(x,lambda) lies in one element --
// a certified lower bound for exact. Returns D(-1) when no threshold works
// (possible only with distinct points at distance zero).
template <class D>
D lebesgue_number(const MetricSpace<D>& s, const Cover& u, LebesgueMode mode,
                  std::uint64_t budget = 5'000'000) {
    if (!is_cover(s, u)) throw invalid_input("not a cover");
    const int n = s.n();
    auto fits = [&](const Bits& sub) {
        for (const Bits& e : u.sets)
            if (sub.is_subset_of(e)) return true;
        return false;
    };
    std::vector<D> cands = s.realized_distances();
    for (auto it = cands.rbegin(); it != cands.rend(); ++it) {
        if (mode == LebesgueMode::ball_bound) {
            bool ok = true;
            for (int x = 0; x < n && ok; ++x) ok = fits(s.ball(x, *it));
            if (ok) return *it;
        } else {
            std::vector<Bits> adj(n, Bits(n));
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    if (!(*it < s.dist(a, b))) {
                        adj[a].set(b);
                        adj[b].set(a);
                    }
            Bits p(n);
            p.set();
            if (detail::maximal_cliques(adj, Bits(n), std::move(p), Bits(n), budget, fits))
                return *it;
        }
    }
    return D(-1);
}

struct InnerResult {
    Cover cover;
    bool covers = true;
};

// Elementwise inner lambda-neighborhood N_{-lambda}(U) = {x in U : every point
// outside U is farther than lambda}. Losing the covering property is legal
// exactly when the exact Lebesgue value is <= lambda; otherwise it is a bug.
template <class D>
InnerResult inner_neighborhood(const MetricSpace<D>& s, const Cover& u, const D& lambda,
                               std::uint64_t lebesgue_budget = 5'000'000) {
    if (lambda < D{}) throw precondition_violation("inner neighborhood needs lambda >= 0");
    if (!is_cover(s, u)) throw invalid_input("not a cover");
    InnerResult out;
    out.cover.names = u.names;
    for (const Bits& e : u.sets) {
        Bits inner(s.n());
        for_each_bit(e, [&](int x) {
            bool deep = true;
            for (int y = 0; y < s.n() && deep; ++y)
                if (!e.test(y) && !(lambda < s.dist(x, y))) deep = false;
            if (deep) inner.set(x);
        });
        out.cover.sets.push_back(std::move(inner));
    }
    out.covers = is_cover(s, out.cover);
    if (!out.covers &&
        lambda < lebesgue_number(s, u, LebesgueMode::exact, lebesgue_budget))
        throw error("inner neighborhood lost covering below the Lebesgue threshold");
    return out;
}

template <class D>
Cover fatten(const MetricSpace<D>& s, const Cover& u, const D& lambda) {
    if (lambda < D{}) throw precondition_violation("fatten needs lambda >= 0");
    Cover out;
    out.names = u.names;
    for (const Bits& e : u.sets) {
        Bits fat(s.n());
        for (int x = 0; x < s.n(); ++x)
            if (e.intersects(s.ball(x, lambda))) fat.set(x);
        out.sets.push_back(std::move(fat));
    }
    return out;
}

// ---------------------------------------------------------------------------
// S-systems

template <class D>
struct SSystem {
    int basepoint = -1;  // -1 when cover-derived
    int l = 1;
    D radius_bound{};
    long long g_bound = 0;
    std::vector<std::vector<Bits>> sets;  // sets[x][k-1], k = 1..3l

    const Bits& at(int x, int k) const {
        if (k < 1 || k > 3 * l) throw precondition_violation("S(x,k,l) needs 1 <= k <= 3l");
        return sets[x][static_cast<std::size_t>(k) - 1];
    }
};

// S(x,k,l) = representatives of the cover elements meeting B(x,k); the default
// representative of an element is its minimum point id.
template <class D>
SSystem<D> cover_to_s_system(const MetricSpace<D>& s, const Cover& u, int l,
                             const std::vector<int>* reps = nullptr) {
    if (l < 1) throw precondition_violation("s-system scale needs l >= 1");
    if (!is_cover(s, u)) throw invalid_input("not a cover");
    std::vector<int> rep;
    if (reps) {
        if (reps->size() != u.sets.size())
            throw invalid_input("one representative per cover element required");
        rep = *reps;
        for (std::size_t i = 0; i < rep.size(); ++i)
            if (rep[i] < 0 || rep[i] >= s.n() || !u.sets[i].test(rep[i]))
                throw invalid_input("representative outside its cover element");
    } else {
        for (const Bits& e : u.sets) {
            std::size_t first = e.find_first();
            if (first == Bits::npos) throw invalid_input("cover element is empty");
            rep.push_back(static_cast<int>(first));
        }
    }
    CoverStats<D> stats = cover_metrics(s, u, D(3 * l));
    SSystem<D> sys;
    sys.l = l;
    sys.radius_bound = D(3 * l) + stats.mesh;
    sys.g_bound = stats.r_multiplicity;
    sys.sets.assign(s.n(), std::vector<Bits>(static_cast<std::size_t>(3) * l, Bits(s.n())));
    for (int x = 0; x < s.n(); ++x)
        for (int k = 1; k <= 3 * l; ++k) {
            Bits bx = s.ball(x, D(k));
            Bits& out = sys.sets[x][static_cast<std::size_t>(k) - 1];
            for (std::size_t i = 0; i < u.sets.size(); ++i)
                if (u.sets[i].intersects(bx)) out.set(rep[i]);
        }
    return sys;
}

template <class D>
struct MeasuredCover {
    Cover cover;
    CoverStats<D> stats;  // r-multiplicity taken at r = l
};

// The cover {A_h : h in union of S(x,l,l)} with A_h = {y : h in S(y,l,l)}.
template <class D>
MeasuredCover<D> s_system_to_cover(const MetricSpace<D>& s, const SSystem<D>& sys) {
    const int l = sys.l;
    Bits h_all(s.n());
    for (int x = 0; x < s.n(); ++x) {
        const Bits& sx = sys.at(x, l);
        if (sx.none()) throw invalid_input("empty S(x,l,l) cannot induce a cover");
        h_all |= sx;
    }
    MeasuredCover<D> out;
    for_each_bit(h_all, [&](int h) {
        Bits a(s.n());
        for (int y = 0; y < s.n(); ++y)
            if (sys.at(y, l).test(h)) a.set(y);
        out.cover.sets.push_back(std::move(a));
        out.cover.names.push_back("A_" + std::to_string(h));
    });
    out.stats = cover_metrics(s, out.cover, D(l));
    return out;
}

struct SReport {
    bool radius_ok = true;
    bool monotone_ok = true;
    bool shift_edge_ok = true;
    bool count_ok = true;
    bool checked_pairs = false;
    bool shift_pair_lower_ok = true;       // S(x,k-d) inside S(x,k) n S(y,k)
    bool shift_pair_upper_union_ok = true;  // S(x,k+d) contains S(x,k) u S(y,k)
    bool shift_pair_upper_meet_ok = true;   // S(x,k+d) contains S(x,k) n S(y,k)
    std::string radius_witness, monotone_witness, shift_edge_witness, count_witness;
    std::string shift_pair_lower_witness, shift_pair_upper_union_witness,
        shift_pair_upper_meet_witness;
    long long max_count_all_k = 0;
    long long max_count_2l = 0;

    // The upper pair bound is gated on the union form; the meet form it
    // implies is reported alongside.
    bool pass() const {
        return radius_ok && monotone_ok && shift_edge_ok && count_ok &&
               (!checked_pairs || (shift_pair_lower_ok && shift_pair_upper_union_ok));
    }
};

namespace detail {

inline std::string s_witness(int x, int k, int l, const std::string& what) {
    std::ostringstream os;
    os << "S(" << x << "," << k << "," << l << ") " << what;
    return os.str();
}

}  // namespace detail

// Checks the S-system conditions: (i) radius bound, (ii) k-monotonicity,
// (iii) edge shift always, pair shifts (both directions; the upper one in
// union and meet form) when strict_pairs, (iv) cardinality <= g_bound at every
// k, with the 2l-only maximum reported separately.
template <class D>
SReport verify_s_system(const MetricSpace<D>& s, const SSystem<D>& sys, long long g_bound,
                        bool strict_pairs) {
    SReport rep;
    const int n = s.n();
    const int l = sys.l;
    for (int x = 0; x < n; ++x)
        for (int k = 1; k <= 3 * l; ++k) {
            const Bits& sx = sys.at(x, k);
            for_each_bit(sx, [&](int w) {
                if (rep.radius_ok && sys.radius_bound < s.dist(x, w)) {
                    rep.radius_ok = false;
                    rep.radius_witness =
                        detail::s_witness(x, k, l, "contains " + std::to_string(w) +
                                                       " beyond the radius bound");
                }
            });
            if (k > 1 && rep.monotone_ok && !sys.at(x, k - 1).is_subset_of(sx)) {
                rep.monotone_ok = false;
                rep.monotone_witness =
                    detail::s_witness(x, k - 1, l, "not inside the next k level");
            }
            long long cnt = static_cast<long long>(sx.count());
            rep.max_count_all_k = std::max(rep.max_count_all_k, cnt);
            if (k == 2 * l) rep.max_count_2l = std::max(rep.max_count_2l, cnt);
            if (rep.count_ok && cnt > g_bound) {
                rep.count_ok = false;
                rep.count_witness = detail::s_witness(
                    x, k, l, "has " + std::to_string(cnt) + " > " + std::to_string(g_bound));
            }
        }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y) continue;
            if (s.dist(x, y) == D(1))
                for (int k = 1; k < 3 * l && rep.shift_edge_ok; ++k)
                    if (!sys.at(y, k).is_subset_of(sys.at(x, k + 1))) {
                        rep.shift_edge_ok = false;
                        rep.shift_edge_witness = detail::s_witness(
                            y, k, l, "not inside S(" + std::to_string(x) + "," +
                                         std::to_string(k + 1) + "," + std::to_string(l) + ")");
                    }
        }
    if (strict_pairs) {
        rep.checked_pairs = true;
        for (int dd = 0; dd <= l; ++dd)
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    if (!(s.dist(x, y) == D(dd))) continue;
                    for (int k = dd + 1; k <= 3 * l; ++k) {
                        Bits meet = sys.at(x, k) & sys.at(y, k);
                        if (rep.shift_pair_lower_ok && !sys.at(x, k - dd).is_subset_of(meet)) {
                            rep.shift_pair_lower_ok = false;
                            rep.shift_pair_lower_witness = detail::s_witness(
                                x, k - dd, l,
                                "escapes the meet at pair (" + std::to_string(x) + "," +
                                    std::to_string(y) + "), k=" + std::to_string(k));
                        }
                    }
                    for (int k = 1; k + dd <= 3 * l; ++k) {
                        const Bits& big = sys.at(x, k + dd);
                        Bits join = sys.at(x, k) | sys.at(y, k);
                        Bits meet = sys.at(x, k) & sys.at(y, k);
                        if (rep.shift_pair_upper_union_ok && !join.is_subset_of(big)) {
                            rep.shift_pair_upper_union_ok = false;
                            rep.shift_pair_upper_union_witness = detail::s_witness(
                                x, k + dd, l,
                                "misses the join at pair (" + std::to_string(x) + "," +
                                    std::to_string(y) + "), k=" + std::to_string(k));
                        }
                        if (rep.shift_pair_upper_meet_ok && !meet.is_subset_of(big)) {
                            rep.shift_pair_upper_meet_ok = false;
                            rep.shift_pair_upper_meet_witness = detail::s_witness(
                                x, k + dd, l,
                                "misses the meet at pair (" + std::to_string(x) + "," +
                                    std::to_string(y) + "), k=" + std::to_string(k));
                        }
                    }
                }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Brute-force asymptotic-dimension-function oracle

enum class PoolRule { balls, intervals, subsets };

// Exact min over covers by pool subsets of diameter <= mesh_bound of the
// lambda-multiplicity, minus 1. The mesh constraint is what keeps the finite
// minimum nontrivial.
template <class D>
int ad_oracle(const MetricSpace<D>& s, const D& lambda, const D& mesh_bound, PoolRule rule,
              int point_budget = 12, std::uint64_t node_budget = 20'000'000) {
    if (s.n() > point_budget) throw budget_exceeded("ad oracle point budget exceeded");
    if (lambda < D{}) throw precondition_violation("ad oracle needs lambda >= 0");
    const int n = s.n();
    std::set<Bits> pool_set;
    auto admit = [&](const Bits& c) {
        if (c.any() && !(mesh_bound < s.set_diameter(c))) pool_set.insert(c);
    };
    switch (rule) {
    case PoolRule::balls:
        for (int x = 0; x < n; ++x)
            for (const D& r : s.realized_distances()) admit(s.ball(x, r));
        break;
    case PoolRule::intervals:
        for (int x = 0; x < n; ++x)
            for (int y = x; y < n; ++y) {
                Bits c(n);
                for (int z = 0; z < n; ++z)
                    if (s.dist(x, z) + s.dist(z, y) == s.dist(x, y)) c.set(z);
                admit(c);
            }
        break;
    case PoolRule::subsets:
        for (std::uint64_t m = 1; m < (1ull << n); ++m) admit(Bits(n, m));
        break;
    }
    if (pool_set.empty()) throw invalid_input("mesh bound admits no candidate sets");
    std::vector<Bits> pool(pool_set.begin(), pool_set.end());
    std::vector<Bits> meets;  // points whose lambda-ball the pool set touches
    meets.reserve(pool.size());
    {
        std::vector<Bits> balls(n);
        for (int x = 0; x < n; ++x) balls[x] = s.ball(x, lambda);
        for (const Bits& c : pool) {
            Bits m(n);
            for (int x = 0; x < n; ++x)
                if (c.intersects(balls[x])) m.set(x);
            meets.push_back(std::move(m));
        }
    }
    int best = INT_MAX;
    std::vector<int> counts(n, 0);
    std::uint64_t nodes = 0;
    Bits covered(n);
    auto dfs = [&](auto&& self, int cur_max) -> void {
        if (++nodes > node_budget) throw budget_exceeded("ad oracle search budget exceeded");
        if (cur_max >= best) return;
        std::size_t first = (~covered).find_first();
        if (first == Bits::npos) {
            best = cur_max;
            return;
        }
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (!pool[i].test(first)) continue;
            int new_max = cur_max;
            for_each_bit(meets[i], [&](int x) { new_max = std::max(new_max, ++counts[x]); });
            Bits saved = covered;
            covered |= pool[i];
            if (new_max < best) self(self, new_max);
            covered = std::move(saved);
            for_each_bit(meets[i], [&](int x) { --counts[x]; });
        }
    };
    dfs(dfs, 0);
    return best - 1;
}

}  // namespace cubical
