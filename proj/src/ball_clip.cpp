#include "sdimlab/cover.h"

#include "sdimlab/errors.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace sdimlab {

namespace {

Rational grid_param(std::uint64_t i, std::uint64_t n) {
    mpq_class q;
    mpz_set_ui(q.get_num_mpz_t(), i);
    mpz_set_ui(q.get_den_mpz_t(), n);
    q.canonicalize();
    return Rational(std::move(q));
}

/// Lower bound on the distance from (px, py) to the box of segment ab, with
/// slack so that a "too far" verdict is safe despite rounding.
bool certainly_outside(const Point& c, const Point& a, const Point& b, double eps) {
    const double cx = c.x.to_double(), cy = c.y.to_double();
    const double x0 = std::min(a.x.to_double(), b.x.to_double());
    const double x1 = std::max(a.x.to_double(), b.x.to_double());
    const double y0 = std::min(a.y.to_double(), b.y.to_double());
    const double y1 = std::max(a.y.to_double(), b.y.to_double());
    const double dx = std::max({x0 - cx, cx - x1, 0.0});
    const double dy = std::max({y0 - cy, cy - y1, 0.0});
    const double scale = 1.0 + std::fabs(cx) + std::fabs(cy) + std::fabs(x0) + std::fabs(x1) +
                         std::fabs(y0) + std::fabs(y1);
    return std::hypot(dx, dy) > eps * (1.0 + 1e-9) + 1e-12 * scale;
}

}  // namespace

std::uint64_t BallClip::fragments_per_edge(const Rational& length2, const Rational& delta) {
    if (delta.sign() <= 0) throw InvalidArgument("ball-clip granularity must be positive");
    const Rational d2 = delta * delta;
    std::uint64_t n = 1;
    Rational cap = d2;  // (n delta)^2
    while (cap < length2) {
        if (n >= (std::uint64_t{1} << 40)) throw BudgetExceeded("ball-clip subdivision is too fine");
        n *= 2;
        cap *= Rational(4);
    }
    return n;
}

BallClip::BallClip(const PLGraph& g, const Point& center, const Rational& epsilon, const Rational& delta)
    : g_(&g), ranges_(g.num_edges()) {
    if (epsilon.sign() <= 0) throw InvalidArgument("epsilon must be positive");
    const Rational eps2 = epsilon * epsilon;
    const double eps_d = epsilon.to_double();

    auto meets = [&](std::size_t e, std::uint64_t i, std::uint64_t n) {
        const Point a = g.point_at(e, grid_param(i, n));
        const Point b = g.point_at(e, grid_param(i + 1, n));
        return dist2_to_segment(center, a, b) <= eps2;
    };

    std::size_t nodes = 0;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const Point& a = g.vertex(g.edge(e).u);
        const Point& b = g.vertex(g.edge(e).v);
        if (certainly_outside(center, a, b, eps_d)) continue;
        if (dist2_to_segment(center, a, b) > eps2) continue;

        EdgeRange& r = ranges_[e];
        r.pieces = fragments_per_edge(g.edge_length2(e), delta);
        // The ball meets the edge in one parameter interval, so the kept
        // fragments are a contiguous run around the closest point.
        const Rational dx = b.x - a.x, dy = b.y - a.y;
        Rational t = ((center.x - a.x) * dx + (center.y - a.y) * dy) / (dx * dx + dy * dy);
        t = max(Rational(0), min(Rational(1), t));
        mpz_class idx = (t * Rational(static_cast<long>(r.pieces))).floor();
        std::uint64_t mid = std::min<std::uint64_t>(idx.get_ui(), r.pieces - 1);
        r.lo = r.hi = mid;
        while (r.lo > 0 && meets(e, r.lo - 1, r.pieces)) --r.lo;
        while (r.hi + 1 < r.pieces && meets(e, r.hi + 1, r.pieces)) ++r.hi;
        r.first_node = nodes;
        nodes += static_cast<std::size_t>(r.hi - r.lo + 1);
    }
    fragment_count_ = nodes;

    std::vector<std::size_t> parent(nodes);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::size_t x, std::size_t y) { parent[find(x)] = find(y); };

    std::map<std::size_t, std::size_t> at_vertex;  // vertex -> some end fragment there
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const EdgeRange& r = ranges_[e];
        if (r.pieces == 0) continue;
        for (std::size_t k = r.first_node; k + 1 < r.first_node + (r.hi - r.lo + 1); ++k) unite(k, k + 1);
        auto join = [&](std::size_t v, std::size_t node) {
            auto [it, fresh] = at_vertex.try_emplace(v, node);
            if (!fresh) unite(it->second, node);
        };
        if (r.lo == 0) join(g.edge(e).u, r.first_node);
        if (r.hi + 1 == r.pieces) join(g.edge(e).v, r.first_node + static_cast<std::size_t>(r.hi - r.lo));
    }

    label_.resize(nodes);
    std::map<std::size_t, std::size_t> relabel;
    for (std::size_t k = 0; k < nodes; ++k) {
        auto [it, fresh] = relabel.try_emplace(find(k), relabel.size());
        label_[k] = it->second;
    }
    comp_size_.assign(relabel.size(), 0);
    for (auto l : label_) ++comp_size_[l];
}

std::optional<std::size_t> BallClip::node_of(std::size_t edge, std::uint64_t fragment) const {
    const EdgeRange& r = ranges_[edge];
    if (r.pieces == 0 || fragment < r.lo || fragment > r.hi) return std::nullopt;
    return r.first_node + static_cast<std::size_t>(fragment - r.lo);
}

std::optional<std::size_t> BallClip::component_of(const GraphPoint& p) const {
    std::optional<std::size_t> vertex = p.vertex;
    if (!vertex) {
        if (p.param.sign() == 0) vertex = g_->edge(p.edge).u;
        else if (p.param == Rational(1)) vertex = g_->edge(p.edge).v;
    }
    if (vertex) {
        for (auto e : g_->incident(*vertex)) {
            const EdgeRange& r = ranges_[e];
            if (r.pieces == 0) continue;
            const auto node = g_->edge(e).u == *vertex ? node_of(e, 0) : node_of(e, r.pieces - 1);
            if (node) return label_[*node];
        }
        return std::nullopt;
    }
    const EdgeRange& r = ranges_[p.edge];
    if (r.pieces == 0) return std::nullopt;
    const Rational scaled = p.param * Rational(static_cast<long>(r.pieces));
    const std::uint64_t idx = scaled.floor().get_ui();
    if (auto node = node_of(p.edge, idx)) return label_[*node];
    if (scaled.is_integer() && idx > 0) {
        if (auto node = node_of(p.edge, idx - 1)) return label_[*node];
    }
    return std::nullopt;
}

}  // namespace sdimlab
