#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cubical/core.hpp"
#include "cubical/cover_metrics.hpp"
#include "cubical/median_graph.hpp"
#include "cubical/normal_paths.hpp"

namespace cubical {

// Exact integer constants of the construction at rank eta.
struct Constants {
    int eta = 1;
    long long K = 0;        // (eta-1)eta/2
    long long M = 0;        // 3 eta + 3 + K
    long long three_m = 0;  // 3M = 3K + 9 eta + 9
    long long N = 0;        // (3M)^eta eta!

    long long S_l(long long l) const { return M * l; }
};

inline Constants constants(int eta) {
    if (eta < 1) throw precondition_violation("constants need eta >= 1");
    Constants c;
    c.eta = eta;
    c.K = static_cast<long long>(eta - 1) * eta / 2;
    c.M = 3LL * eta + 3 + c.K;
    c.three_m = 3 * c.M;
    long long n = 1;
    for (int i = 1; i <= eta; ++i)
        if (__builtin_mul_overflow(n, c.three_m, &n) ||
            __builtin_mul_overflow(n, static_cast<long long>(i), &n))
            throw budget_exceeded("constant N overflows 64 bits at rank " + std::to_string(eta));
    c.N = n;
    return c;
}

// Separated net C on the interval [xbar, apex] at scale l, with the projection
// p defined on every interval member. Build through NetBuilder.
class Net {
public:
    int xbar() const { return xbar_; }
    int apex() const { return apex_; }
    int l() const { return l_; }
    int dim() const { return dim_; }
    const Bits& members() const { return members_; }
    const Bits& point_mask() const { return point_mask_; }
    const std::vector<int>& points() const { return points_; }

    // Projection p(z), ascending and nonempty.
    const std::vector<int>& p(int z) const {
        if (z < 0 || static_cast<std::size_t>(z) >= members_.size() || !members_.test(z))
            throw precondition_violation("projection queried outside [xbar, apex]");
        return proj_[static_cast<std::size_t>(z)];
    }

private:
    friend class NetBuilder;
    int xbar_ = 0;
    int apex_ = 0;
    int l_ = 1;
    int dim_ = 0;
    Bits members_;
    Bits point_mask_;
    std::vector<int> points_;
    std::vector<std::vector<int>> proj_;  // indexed by vertex id, empty off the interval
};

// Memoized net construction over one geometry. Sub-nets are shared across
// apexes through the ordered-pair cache; hits never change results.
class NetBuilder {
public:
    NetBuilder(const NormalGeometry& geo, int l)
        : geo_(&geo), l_(l), eta_(std::max(1, geo.graph().dimension())) {
        if (l < 1) throw precondition_violation("net scale needs l >= 1");
        if (!geo.graph().is_validated())
            throw precondition_violation("net construction needs a validated graph");
    }

    const NormalGeometry& geometry() const { return *geo_; }
    int l() const { return l_; }
    int eta() const { return eta_; }

    const Net& net(int xbar, int x) { return *build(xbar, x, 0); }

private:
    std::shared_ptr<const Net> build(int xbar, int x, int depth) {
        if (depth > eta_)
            throw error("net recursion exceeded the rank bound (dimension drop failed)");
        std::uint64_t key =
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(xbar)) << 32) |
            static_cast<std::uint32_t>(x);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        const MedianGraph& g = geo_->graph();
        auto net = std::make_shared<Net>();
        net->xbar_ = xbar;
        net->apex_ = x;
        net->l_ = l_;
        net->members_ = g.interval(xbar, x);
        net->dim_ = g.dimension(xbar, x);
        net->proj_.assign(static_cast<std::size_t>(g.n()), {});
        Bits mask(g.n());

        if (net->dim_ <= 1) {
            // The interval is a geodesic path: net points at distance
            // multiples of l from xbar, projection to the floor multiple.
            const int d = g.dist(xbar, x);
            std::vector<int> by_dist(static_cast<std::size_t>(d) + 1, -1);
            for_each_bit(net->members_, [&](int z) {
                int dz = g.dist(xbar, z);
                if (by_dist[static_cast<std::size_t>(dz)] != -1)
                    throw error("rank-one interval is not a path (corrupt state)");
                by_dist[static_cast<std::size_t>(dz)] = z;
            });
            for (int i = 0; i <= d; ++i)
                if (by_dist[static_cast<std::size_t>(i)] < 0)
                    throw error("rank-one interval misses a distance level (corrupt state)");
            for (int i = 0; i <= d; i += l_) mask.set(by_dist[static_cast<std::size_t>(i)]);
            for_each_bit(net->members_, [&](int z) {
                int anchor = (g.dist(xbar, z) / l_) * l_;
                net->proj_[static_cast<std::size_t>(z)] = {
                    by_dist[static_cast<std::size_t>(anchor)]};
            });
        } else {
            mask.set(xbar);
            net->proj_[static_cast<std::size_t>(xbar)] = {xbar};
            const int dn = geo_->dnor(xbar, x);
            struct Part {
                Bits span;
                std::shared_ptr<const Net> sub;
            };
            std::vector<std::vector<Part>> levels;
            for (int n = 1; n * l_ <= dn; ++n) {
                SphereDecomposition dec = geo_->decompose_sphere(xbar, x, n * l_);
                std::vector<Part> level;
                for (const SpherePart& part : dec.parts) {
                    auto sub = build(part.x_h, dec.gate, depth + 1);
                    if (sub->dim_ >= net->dim_)
                        throw error("sphere part fails to drop the interval rank");
                    mask |= sub->point_mask_;
                    level.push_back({g.interval(part.x_h, dec.gate), sub});
                }
                levels.push_back(std::move(level));
            }
            for_each_bit(net->members_, [&](int z) {
                if (z == xbar) return;
                int n = geo_->dnor(xbar, z) / l_;
                if (n == 0) {
                    net->proj_[static_cast<std::size_t>(z)] = {xbar};
                    return;
                }
                int zt = geo_->path(xbar, z).vertex_at(n * l_);
                std::vector<int> out;
                for (const Part& part : levels[static_cast<std::size_t>(n) - 1])
                    if (part.span.test(zt)) {
                        const auto& q = part.sub->proj_[static_cast<std::size_t>(zt)];
                        out.insert(out.end(), q.begin(), q.end());
                    }
                if (out.empty())
                    throw error("projection anchor escapes every sphere part at vertex " +
                                std::to_string(z));
                std::sort(out.begin(), out.end());
                out.erase(std::unique(out.begin(), out.end()), out.end());
                net->proj_[static_cast<std::size_t>(z)] = std::move(out);
            });
        }

        net->point_mask_ = mask;
        net->points_ = to_vector(mask);
        memo_.emplace(key, net);
        return net;
    }

    const NormalGeometry* geo_;
    int l_;
    int eta_;
    std::unordered_map<std::uint64_t, std::shared_ptr<const Net>> memo_;
};

// S(x,k,l) relative to the basepoint x0: h-images of B(x,k) projected through
// the net on [x0,x].
inline Bits s_set(NetBuilder& nets, int x0, int x, int k) {
    const NormalGeometry& geo = nets.geometry();
    const MedianGraph& g = geo.graph();
    const int l = nets.l();
    if (k < 1 || k > 3 * l) throw precondition_violation("S(x,k,l) needs 1 <= k <= 3l");
    const Net& net = nets.net(x0, x);
    Bits images(g.n());
    for (int y = 0; y < g.n(); ++y)
        if (g.dist(x, y) <= k) images.set(geo.h_map(x0, l, y));
    Bits out(g.n());
    for_each_bit(images, [&](int h) {
        if (!net.members().test(h))
            throw error("h-image " + std::to_string(h) + " escapes [" + std::to_string(x0) +
                        "," + std::to_string(x) + "]");
        for (int w : net.p(h)) out.set(w);
    });
    return out;
}

inline MetricSpace<long long> graph_metric(const MedianGraph& g) {
    std::vector<std::vector<long long>> t(static_cast<std::size_t>(g.n()),
                                          std::vector<long long>(static_cast<std::size_t>(g.n())));
    for (int x = 0; x < g.n(); ++x)
        for (int y = 0; y < g.n(); ++y) t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = g.dist(x, y);
    return MetricSpace<long long>::from_table(std::move(t));
}

// The full S-system at one basepoint; bounds come from the whole-complex rank.
inline SSystem<long long> build_s_system(NetBuilder& nets, int x0) {
    const MedianGraph& g = nets.geometry().graph();
    Constants c = constants(nets.eta());
    SSystem<long long> sys;
    sys.basepoint = x0;
    sys.l = nets.l();
    sys.radius_bound = c.M * nets.l();
    sys.g_bound = c.N;
    sys.sets.assign(static_cast<std::size_t>(g.n()),
                    std::vector<Bits>(static_cast<std::size_t>(3) * nets.l(), Bits(g.n())));
    for (int x = 0; x < g.n(); ++x)
        for (int k = 1; k <= 3 * nets.l(); ++k)
            sys.sets[static_cast<std::size_t>(x)][static_cast<std::size_t>(k) - 1] =
                s_set(nets, x0, x, k);
    return sys;
}

// The cover {A_h} induced by S(.,l,l), with its representative net point per
// element and metrics taken at r = l.
struct NetCover {
    int basepoint = 0;
    int l = 1;
    Cover cover;
    std::vector<int> reps;
    CoverStats<long long> stats;
};

inline NetCover build_cover(NetBuilder& nets, int x0) {
    const MedianGraph& g = nets.geometry().graph();
    MetricSpace<long long> ms = graph_metric(g);
    SSystem<long long> sys = build_s_system(nets, x0);
    MeasuredCover<long long> mc = s_system_to_cover(ms, sys);
    NetCover out;
    out.basepoint = x0;
    out.l = nets.l();
    out.cover = std::move(mc.cover);
    out.stats = mc.stats;
    Bits h_all(g.n());
    for (int x = 0; x < g.n(); ++x) h_all |= sys.at(x, nets.l());
    out.reps = to_vector(h_all);
    return out;
}

}  // namespace cubical
