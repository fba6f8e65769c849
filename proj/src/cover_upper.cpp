#include "sdimlab/cover.h"

#include "sdimlab/errors.h"
#include "sdimlab/graph_io.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace sdimlab {

namespace {

struct Interval {
    Rational s, t;
};

/// Closed covered intervals of one edge, kept sorted and merged.
class Coverage {
public:
    void add(const Rational& s, const Rational& t) {
        std::vector<Interval> out;
        Rational lo = s, hi = t;
        bool placed = false;
        for (auto& iv : runs_) {
            if (iv.t < lo) {
                out.push_back(std::move(iv));
            } else if (hi < iv.s) {
                if (!placed) {
                    out.push_back({lo, hi});
                    placed = true;
                }
                out.push_back(std::move(iv));
            } else {
                lo = min(lo, iv.s);
                hi = max(hi, iv.t);
            }
        }
        if (!placed) out.push_back({lo, hi});
        runs_ = std::move(out);
    }

    /// Infimum of the uncovered part of [0, 1], if any.
    std::optional<Rational> first_gap() const {
        if (runs_.empty() || runs_.front().s.sign() > 0) return Rational(0);
        if (runs_.front().t < Rational(1)) return runs_.front().t;
        return std::nullopt;
    }

    bool contains(const Rational& s, const Rational& t) const {
        for (const auto& iv : runs_) {
            if (iv.s <= s && t <= iv.t) return true;
        }
        return false;
    }

private:
    std::vector<Interval> runs_;
};

class CoverBuilder {
public:
    CoverBuilder(const PLGraph& g, const Rational& eps, unsigned bits)
        : g_(g), eps2_(eps * eps), eps2_d_(eps2_.to_double()), bits_(bits),
          grid_(std::int64_t{1} << bits), coverage_(g.num_edges()) {
        if (bits < 4 || bits > 60) throw InvalidArgument("grid_bits must be in [4, 60]");
        for (const auto& p : g.vertices()) vd_.push_back({p.x.to_double(), p.y.to_double()});
    }

    std::vector<SubSet> run() {
        for (std::size_t e = 0; e < g_.num_edges(); ++e) {
            while (auto s = coverage_[e].first_gap()) grow(e, *s);
        }
        return std::move(elements_);
    }

private:
    struct Piece {
        std::vector<Point> pts;
        std::vector<std::pair<double, double>> pd;
        SubSet set;
    };

    Rational param(std::int64_t j, bool forward) const {
        Rational t = Rational(j) * Rational::pow2(-static_cast<long>(bits_));
        return forward ? t : Rational(1) - t;
    }

    std::int64_t index_of(const Rational& t, bool forward) const {
        const Rational along = forward ? t : Rational(1) - t;
        return (along * Rational::pow2(static_cast<long>(bits_))).floor().get_si();
    }

    static void add_point(Piece& piece, Point p) {
        piece.pd.emplace_back(p.x.to_double(), p.y.to_double());
        piece.pts.push_back(std::move(p));
    }

    bool feasible_exact(const Piece& piece, const Point& q) const {
        for (const auto& p : piece.pts) {
            if (dist2(p, q) >= eps2_) return false;
        }
        return true;
    }

    bool feasible_double(const Piece& piece, double qx, double qy) const {
        for (const auto& [px, py] : piece.pd) {
            const double dx = px - qx, dy = py - qy;
            if (dx * dx + dy * dy >= eps2_d_) return false;
        }
        return true;
    }

    /// Farthest parameter reachable from `from` along edge e (towards 1 when
    /// forward) keeping every piece distance < eps. The reachable set is an
    /// interval because distance to a fixed point is convex along the edge.
    Rational extend(const Piece& piece, std::size_t e, const Rational& from, bool forward) const {
        const Rational end = forward ? Rational(1) : Rational(0);
        if (feasible_exact(piece, g_.point_at(e, end))) return end;

        const auto [ax, ay] = vd_[g_.edge(e).u];
        const auto [bx, by] = vd_[g_.edge(e).v];
        auto at_d = [&](std::int64_t j) {
            double t = static_cast<double>(j) / static_cast<double>(grid_);
            if (!forward) t = 1.0 - t;
            return std::pair{ax + t * (bx - ax), ay + t * (by - ay)};
        };
        const std::int64_t j0 = index_of(from, forward);
        std::int64_t lo = j0, hi = grid_;
        while (hi - lo > 1) {
            const std::int64_t mid = lo + (hi - lo) / 2;
            const auto [qx, qy] = at_d(mid);
            (feasible_double(piece, qx, qy) ? lo : hi) = mid;
        }
        // Rounding may put lo a few grid steps past the exact boundary.
        std::int64_t back = 1;
        while (lo > j0 && !feasible_exact(piece, g_.point_at(e, param(lo, forward)))) {
            lo = std::max(j0, lo - back);
            back *= 2;
        }
        return lo > j0 ? param(lo, forward) : from;
    }

    void add_fragment(Piece& piece, std::size_t e, const Rational& a, const Rational& b) {
        const Rational& s = min(a, b);
        const Rational& t = max(a, b);
        if (s.sign() == 0 && t == Rational(1)) {
            piece.set.whole_edges.push_back(e);
        } else {
            piece.set.partial_edges.push_back(PartialEdge{e, s, t});
        }
        add_point(piece, g_.point_at(e, a));
        add_point(piece, g_.point_at(e, b));
        coverage_[e].add(s, t);
    }

    void grow(std::size_t e, const Rational& s) {
        Piece piece;
        std::deque<std::size_t> queue;
        std::set<std::size_t> visited;
        if (s.sign() == 0) {
            const std::size_t root = g_.edge(e).u;
            add_point(piece, g_.vertex(root));
            piece.set.anchor_vertices.push_back(root);
            queue.push_back(root);
            visited.insert(root);
        } else {
            add_point(piece, g_.point_at(e, s));
            const Rational t = extend(piece, e, s, true);
            if (t == s) throw std::logic_error("cover grid too coarse for eps at edge " + std::to_string(e));
            add_fragment(piece, e, s, t);
            if (t == Rational(1)) {
                queue.push_back(g_.edge(e).v);
                visited.insert(g_.edge(e).v);
            }
        }

        const std::size_t before = piece.set.whole_edges.size() + piece.set.partial_edges.size();
        while (!queue.empty()) {
            const std::size_t w = queue.front();
            queue.pop_front();
            for (auto f : g_.incident(w)) {
                if (!coverage_[f].first_gap()) continue;
                const bool forward = g_.edge(f).u == w;
                const Rational from = forward ? Rational(0) : Rational(1);
                const Rational to = extend(piece, f, from, forward);
                if (to == from) continue;
                if (coverage_[f].contains(min(from, to), max(from, to))) continue;
                add_fragment(piece, f, from, to);
                if (to == (forward ? Rational(1) : Rational(0))) {
                    const std::size_t x = forward ? g_.edge(f).v : g_.edge(f).u;
                    if (visited.insert(x).second) queue.push_back(x);
                }
            }
        }
        if (s.sign() == 0 && piece.set.whole_edges.size() + piece.set.partial_edges.size() == before) {
            throw std::logic_error("cover grid too coarse for eps at vertex " + std::to_string(g_.edge(e).u));
        }
        elements_.push_back(std::move(piece.set));
    }

    const PLGraph& g_;
    Rational eps2_;
    double eps2_d_;
    unsigned bits_;
    std::int64_t grid_;
    std::vector<std::pair<double, double>> vd_;
    std::vector<Coverage> coverage_;
    std::vector<SubSet> elements_;
};

}  // namespace

CoverCertificate upper_cover(const PLGraph& g, const Rational& epsilon, const CoverOptions& opts) {
    if (epsilon.sign() <= 0) throw InvalidArgument("epsilon must be positive");
    CoverCertificate cert;
    cert.epsilon = epsilon;
    cert.host = host_id(g);
    cert.elements = CoverBuilder(g, epsilon, opts.grid_bits).run();
    return cert;
}

}  // namespace sdimlab
