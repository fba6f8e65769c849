#include "sdimlab/cover.h"

#include "sdimlab/errors.h"
#include "sdimlab/graph_io.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <unordered_map>

namespace sdimlab {

namespace {

struct Candidate {
    GraphPoint where;
    Point at;
    double x = 0, y = 0;
};

/// Parameter step h with h^2 * length2 >= eps2: exact when eps/length is
/// rational, otherwise the next multiple of 2^-30 above it.
Rational sample_step(const Rational& eps2, const Rational& length2) {
    const Rational ratio = eps2 / length2;
    Rational root;
    if (exact_sqrt(ratio, root)) return root;
    constexpr long kBits = 30;
    const double approx = std::sqrt(ratio.to_double());
    long j = static_cast<long>(std::ceil(approx * static_cast<double>(1L << kBits)));
    if (j < 1) j = 1;
    Rational step = Rational(j) * Rational::pow2(-kBits);
    while (step * step < ratio) {
        ++j;
        step = Rational(j) * Rational::pow2(-kBits);
    }
    return step;
}

double coordinate_scale(const PLGraph& g) {
    double s = 0;
    for (const auto& p : g.vertices()) s = std::max({s, std::fabs(p.x.to_double()), std::fabs(p.y.to_double())});
    return 1.0 + s;
}

struct CellKey {
    long long cx, cy;
    bool operator==(const CellKey&) const = default;
};
struct CellHash {
    std::size_t operator()(const CellKey& k) const {
        return std::hash<long long>()(k.cx * 1000003LL) ^ std::hash<long long>()(k.cy);
    }
};

}  // namespace

bool is_valid_point(const PLGraph& g, const GraphPoint& p) {
    if (p.vertex) return *p.vertex < g.num_vertices();
    return p.edge < g.num_edges() && p.param.sign() >= 0 && p.param <= Rational(1);
}

Point locate(const PLGraph& g, const GraphPoint& p) {
    if (p.vertex) return g.vertex(*p.vertex);
    return g.point_at(p.edge, p.param);
}

std::optional<DisconnectionWitness> disconnection_witness(const PLGraph& g, const GraphPoint& x,
                                                          const GraphPoint& y, const Rational& epsilon,
                                                          const Rational& delta) {
    if (!is_valid_point(g, x) || !is_valid_point(g, y)) throw InvalidArgument("point is not on the graph");
    BallClip clip(g, locate(g, x), epsilon, delta);
    const auto cx = clip.component_of(x);
    if (!cx) throw std::logic_error("ball center missing from its own clipped graph");
    const auto cy = clip.component_of(y);
    if (cy && *cy == *cx) return std::nullopt;
    return DisconnectionWitness{0, delta, clip.fragment_count(), clip.component_size(*cx)};
}

SeparationCertificate lower_separation(const PLGraph& g, const Rational& epsilon, const SeparationOptions& opts) {
    if (epsilon.sign() <= 0) throw InvalidArgument("epsilon must be positive");
    const Rational eps2 = epsilon * epsilon;
    const Rational delta = opts.delta ? *opts.delta : epsilon / Rational(8);
    if (delta.sign() <= 0) throw InvalidArgument("delta must be positive");

    SeparationCertificate cert;
    cert.epsilon = epsilon;
    cert.host = host_id(g);
    std::optional<Rational> floor_height;
    if (opts.guard) {
        if (opts.guard->amplitude.sign() < 0) throw InvalidArgument("guard amplitude must be >= 0");
        cert.guard = TruncationGuard{opts.guard->K, opts.guard->amplitude, opts.guard->amplitude + epsilon};
        floor_height = cert.guard->threshold;
    }
    auto admissible = [&](const Point& p) { return !floor_height || p.y >= *floor_height; };

    std::vector<Candidate> candidates;
    {
        std::vector<std::size_t> vs;
        for (std::size_t v = 0; v < g.num_vertices(); ++v) {
            if (admissible(g.vertex(v))) vs.push_back(v);
        }
        std::stable_sort(vs.begin(), vs.end(), [&](std::size_t a, std::size_t b) {
            const Point& pa = g.vertex(a);
            const Point& pb = g.vertex(b);
            if (pa.y != pb.y) return pa.y > pb.y;
            return pa.x < pb.x;
        });
        for (auto v : vs) candidates.push_back({GraphPoint::at_vertex(v), g.vertex(v), 0, 0});
    }
    if (opts.interior_sampling) {
        for (std::size_t e = 0; e < g.num_edges(); ++e) {
            const Rational step = sample_step(eps2, g.edge_length2(e));
            for (Rational t = step; t < Rational(1); t += step) {
                Point p = g.point_at(e, t);
                if (admissible(p)) candidates.push_back({GraphPoint::on_edge(e, t), std::move(p), 0, 0});
            }
        }
    }
    for (auto& c : candidates) {
        c.x = c.at.x.to_double();
        c.y = c.at.y.to_double();
    }

    const double eps_d = epsilon.to_double();
    const double eps2_d = eps2.to_double();
    const double scale = coordinate_scale(g);
    const double margin = 1e-12 * scale * scale;
    auto cell_of = [&](double x, double y) {
        return CellKey{static_cast<long long>(std::floor(x / eps_d)), static_cast<long long>(std::floor(y / eps_d))};
    };

    std::vector<std::size_t> chosen;  // candidate indices
    std::vector<std::unique_ptr<BallClip>> clips;
    std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> cells;  // -> positions in chosen
    std::uint64_t pair_checks = 0;
    auto count_checks = [&](std::uint64_t n) {
        pair_checks += n;
        if (pair_checks > opts.budget.max_pair_checks) {
            throw BudgetExceeded("separation search exceeded " + std::to_string(opts.budget.max_pair_checks) +
                                 " pair checks");
        }
    };
    auto clip_of = [&](std::size_t pos) -> const BallClip& {
        if (!clips[pos]) clips[pos] = std::make_unique<BallClip>(g, candidates[chosen[pos]].at, epsilon, delta);
        return *clips[pos];
    };
    // Some witness for (chosen[pos], cand), or nullopt when the pair may
    // share a small connected set.
    auto witness_for = [&](std::size_t pos, const Candidate& cand) -> std::optional<PairWitness> {
        const Candidate& s = candidates[chosen[pos]];
        PairWitness w;
        const double dx = s.x - cand.x, dy = s.y - cand.y;
        const double d2 = dx * dx + dy * dy;
        if (d2 > eps2_d * (1 + 1e-9) + margin) return w;
        if (d2 >= eps2_d * (1 - 1e-9) - margin && dist2(s.at, cand.at) >= eps2) return w;
        const BallClip& clip = clip_of(pos);
        const auto cs = clip.component_of(s.where);
        const auto cc = clip.component_of(cand.where);
        if (cc && *cc == *cs) return std::nullopt;
        w.kind = PairWitness::Kind::disconnection;
        w.disconnection = DisconnectionWitness{pos, delta, clip.fragment_count(), clip.component_size(*cs)};
        return w;
    };

    std::vector<PairWitness> pending;
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
        const Candidate& cand = candidates[ci];
        const CellKey home = cell_of(cand.x, cand.y);
        bool blocked = false;
        for (long long dx = -1; dx <= 1 && !blocked; ++dx) {
            for (long long dy = -1; dy <= 1 && !blocked; ++dy) {
                auto it = cells.find(CellKey{home.cx + dx, home.cy + dy});
                if (it == cells.end()) continue;
                count_checks(it->second.size());
                for (auto pos : it->second) {
                    if (!witness_for(pos, cand)) {
                        blocked = true;
                        break;
                    }
                }
            }
        }
        if (blocked) continue;

        // Full pass over every chosen point; this also settles pairs the cell
        // lookup could have missed through rounding.
        const std::size_t self = chosen.size();
        pending.clear();
        count_checks(chosen.size());
        for (std::size_t pos = 0; pos < chosen.size() && !blocked; ++pos) {
            auto w = witness_for(pos, cand);
            if (!w) {
                blocked = true;
                break;
            }
            w->i = pos;
            w->j = self;
            pending.push_back(*w);
        }
        if (blocked) continue;
        chosen.push_back(ci);
        clips.emplace_back();
        cells[home].push_back(self);
        cert.witnesses.insert(cert.witnesses.end(), pending.begin(), pending.end());
    }

    cert.points.reserve(chosen.size());
    for (auto ci : chosen) cert.points.push_back(candidates[ci].where);
    return cert;
}

bool verify_separation(const PLGraph& g, const SeparationCertificate& s) {
    if (s.host != host_id(g)) throw HostMismatch("certificate host " + s.host + " is not graph " + host_id(g));
    if (s.epsilon.sign() <= 0) return false;
    const std::size_t n = s.points.size();
    for (const auto& p : s.points) {
        if (!is_valid_point(g, p)) return false;
    }
    std::vector<Point> where;
    where.reserve(n);
    for (const auto& p : s.points) where.push_back(locate(g, p));

    if (s.guard) {
        if (s.guard->amplitude.sign() < 0) return false;
        if (s.guard->threshold < s.guard->amplitude + s.epsilon) return false;
        for (const auto& p : where) {
            if (p.y < s.guard->threshold) return false;
        }
    }

    if (s.witnesses.size() != n * (n - (n > 0 ? 1 : 0)) / 2) return false;
    std::vector<char> seen(n * (n > 0 ? n - 1 : 0) / 2, 0);
    const Rational eps2 = s.epsilon * s.epsilon;
    std::map<std::pair<std::size_t, std::string>, std::unique_ptr<BallClip>> clips;

    for (const auto& w : s.witnesses) {
        if (!(w.i < w.j && w.j < n)) return false;
        const std::size_t slot = w.j * (w.j - 1) / 2 + w.i;
        if (seen[slot]) return false;
        seen[slot] = 1;

        if (w.kind == PairWitness::Kind::distance) {
            if (dist2(where[w.i], where[w.j]) < eps2) return false;
            continue;
        }
        const auto& d = w.disconnection;
        if (d.center != w.i && d.center != w.j) return false;
        if (d.delta.sign() <= 0) return false;
        const std::size_t other = d.center == w.i ? w.j : w.i;
        auto& clip = clips[{d.center, d.delta.str()}];
        if (!clip) clip = std::make_unique<BallClip>(g, where[d.center], s.epsilon, d.delta);
        if (clip->fragment_count() != d.clipped_fragments) return false;
        const auto cc = clip->component_of(s.points[d.center]);
        if (!cc || clip->component_size(*cc) != d.center_component_size) return false;
        const auto co = clip->component_of(s.points[other]);
        if (co && *co == *cc) return false;
    }
    return true;
}

Bounds s_bounds(const PLGraph& g, const Rational& epsilon, const SeparationOptions& sep, const CoverOptions& cov) {
    const auto cover = upper_cover(g, epsilon, cov);
    const auto separation = lower_separation(g, epsilon, sep);
    Bounds b{separation.points.size(), cover.elements.size()};
    if (b.lower > b.upper) {
        throw std::logic_error("lower bound " + std::to_string(b.lower) + " exceeds upper bound " +
                               std::to_string(b.upper) + " at eps=" + epsilon.str());
    }
    return b;
}

}  // namespace sdimlab
