#include "sdimlab/geom.h"

#include "sdimlab/errors.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

namespace sdimlab {

namespace {

Rational cross(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by) {
    return ax * by - ay * bx;
}

struct Box {
    double x0, x1, y0, y1;
};

double pad(double v) { return 1e-9 * (1.0 + std::fabs(v)); }

Box padded_box(const Point& a, const Point& b) {
    const double ax = a.x.to_double(), ay = a.y.to_double();
    const double bx = b.x.to_double(), by = b.y.to_double();
    Box r{std::min(ax, bx), std::max(ax, bx), std::min(ay, by), std::max(ay, by)};
    r.x0 -= pad(r.x0);
    r.x1 += pad(r.x1);
    r.y0 -= pad(r.y0);
    r.y1 += pad(r.y1);
    return r;
}

/// Calls visit(i, j) for every pair whose padded bounding boxes overlap.
/// Padding makes the filter conservative with respect to the exact boxes.
template <class Visit>
void for_each_box_pair(const std::vector<Box>& boxes, Visit&& visit) {
    std::vector<std::size_t> order(boxes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return boxes[l].x0 < boxes[r].x0; });
    for (std::size_t a = 0; a < order.size(); ++a) {
        const Box& bi = boxes[order[a]];
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            const Box& bj = boxes[order[b]];
            if (bj.x0 > bi.x1) break;
            if (bj.y0 > bi.y1 || bj.y1 < bi.y0) continue;
            visit(order[a], order[b]);
        }
    }
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[b] = a;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

bool in_unit(const Rational& t) { return t.sign() >= 0 && t <= Rational(1); }

Rational project(const Point& p, const Point& a, const Point& b) {
    const Rational dx = b.x - a.x, dy = b.y - a.y;
    return ((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy);
}

/// Edges i and j meet only in a shared endpoint (or not at all).
bool meet_properly(const std::vector<Point>& vs, const Edge& ei, const Edge& ej) {
    const auto m = intersect(vs[ei.u], vs[ei.v], vs[ej.u], vs[ej.v]);
    using K = SegmentMeet::Kind;
    if (m.kind == K::none) return true;
    if (m.kind == K::overlap) return false;
    const bool ti_end = m.t.sign() == 0 || m.t == Rational(1);
    const bool tj_end = m.u.sign() == 0 || m.u == Rational(1);
    if (!ti_end || !tj_end) return false;
    const std::size_t vi = m.t.sign() == 0 ? ei.u : ei.v;
    const std::size_t vj = m.u.sign() == 0 ? ej.u : ej.v;
    return vi == vj;
}

bool graph_connected(std::size_t nv, const std::vector<Edge>& edges) {
    if (nv == 0) return false;
    UnionFind uf(nv);
    std::size_t comps = nv;
    for (const auto& e : edges) {
        if (uf.unite(e.u, e.v)) --comps;
    }
    return comps == 1;
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    auto turn = [](const Point& o, const Point& a, const Point& b) {
        return cross(a.x - o.x, a.y - o.y, b.x - o.x, b.y - o.y).sign();
    };
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace

Segment::Segment(Point a, Point b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_ == b_) throw InvalidArgument("degenerate segment at (" + a_.x.str() + ", " + a_.y.str() + ")");
}

Rational dist2(const Point& p, const Point& q) {
    const Rational dx = p.x - q.x;
    const Rational dy = p.y - q.y;
    return dx * dx + dy * dy;
}

Rational dist2_to_segment(const Point& p, const Point& a, const Point& b) {
    Rational t = project(p, a, b);
    if (t.sign() < 0) t = Rational(0);
    if (t > Rational(1)) t = Rational(1);
    return dist2(p, lerp(a, b, t));
}

Point lerp(const Point& a, const Point& b, const Rational& t) {
    return Point{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

PLGraph::PLGraph(std::vector<Point> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    {
        std::vector<Point> sorted = vertices_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw InvalidArgument("graph has repeated vertex coordinates");
        }
    }
    for (auto& e : edges_) {
        if (e.u >= vertices_.size() || e.v >= vertices_.size()) {
            throw InvalidArgument("edge references a missing vertex");
        }
        if (e.u == e.v) throw InvalidArgument("edge is a loop");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    {
        std::vector<Edge> sorted = edges_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw InvalidArgument("graph has duplicate edges");
        }
    }
    if (!graph_connected(vertices_.size(), edges_)) throw DisconnectedInput("graph is not connected");

    std::vector<Box> boxes;
    boxes.reserve(edges_.size());
    for (const auto& e : edges_) boxes.push_back(padded_box(vertices_[e.u], vertices_[e.v]));
    for_each_box_pair(boxes, [&](std::size_t i, std::size_t j) {
        if (!meet_properly(vertices_, edges_[i], edges_[j])) {
            throw ImproperGraph("edges " + std::to_string(i) + " and " + std::to_string(j) +
                                " meet away from a shared endpoint");
        }
    });

    incident_.resize(vertices_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        incident_[edges_[i].u].push_back(i);
        incident_[edges_[i].v].push_back(i);
    }
}

Point PLGraph::point_at(std::size_t e, const Rational& t) const {
    const Edge& ed = edges_[e];
    return lerp(vertices_[ed.u], vertices_[ed.v], t);
}

Rational PLGraph::edge_length2(std::size_t e) const {
    return dist2(vertices_[edges_[e].u], vertices_[edges_[e].v]);
}

SegmentMeet intersect(const Point& a0, const Point& a1, const Point& b0, const Point& b1) {
    SegmentMeet out;
    const Rational d1x = a1.x - a0.x, d1y = a1.y - a0.y;
    const Rational d2x = b1.x - b0.x, d2y = b1.y - b0.y;
    const Rational wx = b0.x - a0.x, wy = b0.y - a0.y;
    const Rational denom = cross(d1x, d1y, d2x, d2y);
    if (denom.sign() != 0) {
        Rational t = cross(wx, wy, d2x, d2y) / denom;
        Rational u = cross(wx, wy, d1x, d1y) / denom;
        if (in_unit(t) && in_unit(u)) {
            out.kind = SegmentMeet::Kind::point;
            out.t = std::move(t);
            out.u = std::move(u);
        }
        return out;
    }
    if (cross(wx, wy, d1x, d1y).sign() != 0) return out;  // parallel, distinct lines

    const Rational tb0 = project(b0, a0, a1);
    const Rational tb1 = project(b1, a0, a1);
    const Rational lo = max(Rational(0), min(tb0, tb1));
    const Rational hi = min(Rational(1), max(tb0, tb1));
    if (lo > hi) return out;
    if (lo == hi) {
        out.kind = SegmentMeet::Kind::point;
        out.t = lo;
        out.u = project(lerp(a0, a1, lo), b0, b1);
        return out;
    }
    out.kind = SegmentMeet::Kind::overlap;
    out.t0 = lo;
    out.t1 = hi;
    return out;
}

PLGraph arrange(std::span<const Segment> segments) {
    if (segments.empty()) throw InvalidArgument("arrange needs at least one segment");

    std::vector<std::vector<Rational>> params(segments.size(), std::vector<Rational>{Rational(0), Rational(1)});
    std::vector<Box> boxes;
    boxes.reserve(segments.size());
    for (const auto& s : segments) boxes.push_back(padded_box(s.a(), s.b()));

    for_each_box_pair(boxes, [&](std::size_t i, std::size_t j) {
        const Segment& si = segments[i];
        const Segment& sj = segments[j];
        const auto m = intersect(si.a(), si.b(), sj.a(), sj.b());
        switch (m.kind) {
            case SegmentMeet::Kind::none:
                break;
            case SegmentMeet::Kind::point:
                params[i].push_back(m.t);
                params[j].push_back(m.u);
                break;
            case SegmentMeet::Kind::overlap:
                // Split each at the other's endpoints; the shared stretch then
                // decomposes into identical elementary edges that dedupe below.
                for (const Point* p : {&sj.a(), &sj.b()}) {
                    Rational t = project(*p, si.a(), si.b());
                    if (in_unit(t)) params[i].push_back(std::move(t));
                }
                for (const Point* p : {&si.a(), &si.b()}) {
                    Rational t = project(*p, sj.a(), sj.b());
                    if (in_unit(t)) params[j].push_back(std::move(t));
                }
                break;
        }
    });

    std::vector<std::vector<Point>> chains(segments.size());
    std::vector<Point> all;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        auto& ps = params[i];
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        chains[i].reserve(ps.size());
        for (const auto& t : ps) chains[i].push_back(lerp(segments[i].a(), segments[i].b(), t));
        all.insert(all.end(), chains[i].begin(), chains[i].end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    auto id_of = [&](const Point& p) {
        return static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), p) - all.begin());
    };
    std::set<Edge> edge_set;
    for (const auto& chain : chains) {
        for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
            std::size_t u = id_of(chain[k]);
            std::size_t v = id_of(chain[k + 1]);
            if (u > v) std::swap(u, v);
            edge_set.insert(Edge{u, v});
        }
    }
    std::vector<Edge> edges(edge_set.begin(), edge_set.end());
    if (!graph_connected(all.size(), edges)) throw DisconnectedInput("union of segments is not connected");
    return PLGraph(std::move(all), std::move(edges));
}

std::vector<Segment> edge_segments(const PLGraph& g) {
    std::vector<Segment> out;
    out.reserve(g.num_edges());
    for (const auto& e : g.edges()) out.emplace_back(g.vertex(e.u), g.vertex(e.v));
    return out;
}

bool is_proper_arrangement(const std::vector<Point>& vertices, const std::vector<Edge>& edges) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (!meet_properly(vertices, edges[i], edges[j])) return false;
        }
    }
    return true;
}

std::vector<Point> subset_endpoints(const PLGraph& g, const SubSet& s) {
    std::vector<Point> pts;
    for (auto e : s.whole_edges) {
        pts.push_back(g.vertex(g.edge(e).u));
        pts.push_back(g.vertex(g.edge(e).v));
    }
    for (const auto& p : s.partial_edges) {
        pts.push_back(g.point_at(p.edge, p.s));
        pts.push_back(g.point_at(p.edge, p.t));
    }
    for (auto v : s.anchor_vertices) pts.push_back(g.vertex(v));
    return pts;
}

Rational subgraph_diameter2(const PLGraph& g, const SubSet& s) {
    if (s.empty()) throw EmptySubset("diameter of an empty subset");
    std::vector<Point> pts = subset_endpoints(g, s);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Rational best;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Rational d = dist2(pts[i], pts[j]);
            if (d > best) best = std::move(d);
        }
    }
    return best;
}

Rational graph_diameter2(const PLGraph& g) {
    const auto hull = convex_hull(g.vertices());
    Rational best;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        for (std::size_t j = i + 1; j < hull.size(); ++j) {
            Rational d = dist2(hull[i], hull[j]);
            if (d > best) best = std::move(d);
        }
    }
    return best;
}

}  // namespace sdimlab
