#include "sdimlab/oracle.h"

#include "sdimlab/errors.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <numeric>

namespace sdimlab {

namespace {

class Bits {
public:
    explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}

    void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { w_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    std::size_t first() const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            if (w_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
        }
        return SIZE_MAX;
    }
    bool none() const {
        return std::all_of(w_.begin(), w_.end(), [](std::uint64_t w) { return w == 0; });
    }
    bool subset_of(const Bits& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            if (w_[i] & ~o.w_[i]) return false;
        }
        return true;
    }
    Bits& operator&=(const Bits& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bits& operator|=(const Bits& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bits minus(const Bits& o) const {
        Bits r = *this;
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= ~o.w_[i];
        return r;
    }
    std::size_t count_minus(const Bits& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) c += static_cast<std::size_t>(std::popcount(w_[i] & ~o.w_[i]));
        return c;
    }
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            for (std::uint64_t w = w_[i]; w; w &= w - 1) f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        }
    }
    friend bool operator==(const Bits&, const Bits&) = default;

private:
    std::vector<std::uint64_t> w_;
};

struct Fragment {
    std::size_t edge;
    std::size_t a, b;  // node ids
};

struct Discretization {
    std::vector<Point> nodes;                 // vertices first
    std::vector<std::size_t> node_edge;       // edge of an interior node
    std::vector<Fragment> fragments;
    std::vector<std::vector<std::size_t>> node_fragments;
};

std::uint64_t pieces_for(const Rational& len2, const Rational& delta) {
    const Rational d2 = delta * delta;
    auto fits = [&](std::uint64_t n) {
        return Rational(static_cast<long>(n)) * Rational(static_cast<long>(n)) * d2 >= len2;
    };
    std::uint64_t n = static_cast<std::uint64_t>(std::max(1.0, std::floor(std::sqrt(len2.to_double()) / delta.to_double())));
    while (n > 1 && fits(n - 1)) --n;
    while (!fits(n)) ++n;
    return n;
}

Discretization discretize(const PLGraph& g, const Rational& delta) {
    Discretization d;
    d.nodes = g.vertices();
    d.node_edge.assign(g.num_vertices(), 0);
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const std::uint64_t n = pieces_for(g.edge_length2(e), delta);
        if (n > 100'000) throw TooLarge("delta too fine for the oracle");
        std::size_t prev = g.edge(e).u;
        for (std::uint64_t i = 1; i <= n; ++i) {
            std::size_t cur;
            if (i == n) {
                cur = g.edge(e).v;
            } else {
                cur = d.nodes.size();
                d.nodes.push_back(g.point_at(e, Rational(static_cast<long>(i), static_cast<long>(n))));
                d.node_edge.push_back(e);
            }
            d.fragments.push_back({e, prev, cur});
            prev = cur;
        }
    }
    d.node_fragments.resize(d.nodes.size());
    for (std::size_t f = 0; f < d.fragments.size(); ++f) {
        d.node_fragments[d.fragments[f].a].push_back(f);
        d.node_fragments[d.fragments[f].b].push_back(f);
    }
    return d;
}

// ---- upper side: minimum set cover over a family of connected pieces ----

std::vector<Bits> candidate_sets(const Discretization& d, const Rational& eps2) {
    const std::size_t nf = d.fragments.size();
    std::vector<Bits> sets;

    // Runs grown breadth-first from every fragment while the diameter stays < eps.
    for (std::size_t f0 = 0; f0 < nf; ++f0) {
        if (dist2(d.nodes[d.fragments[f0].a], d.nodes[d.fragments[f0].b]) >= eps2) continue;
        Bits in(nf);
        std::vector<std::size_t> ends{d.fragments[f0].a, d.fragments[f0].b};
        std::deque<std::size_t> queue{f0};
        in.set(f0);
        while (!queue.empty()) {
            const auto f = queue.front();
            queue.pop_front();
            for (auto node : {d.fragments[f].a, d.fragments[f].b}) {
                for (auto h : d.node_fragments[node]) {
                    if (in.test(h)) continue;
                    const std::size_t far = d.fragments[h].a == node ? d.fragments[h].b : d.fragments[h].a;
                    const bool ok = std::all_of(ends.begin(), ends.end(),
                                                [&](std::size_t p) { return dist2(d.nodes[p], d.nodes[far]) < eps2; });
                    if (!ok) continue;
                    in.set(h);
                    ends.push_back(far);
                    queue.push_back(h);
                }
            }
        }
        sets.push_back(std::move(in));
    }

    // Component through c of the fragments inside the open ball B(c, eps/2).
    const Rational r2 = eps2 / Rational(4);
    for (std::size_t c = 0; c < d.nodes.size(); ++c) {
        std::vector<char> near(d.nodes.size(), 0);
        auto inside = [&](std::size_t p) {
            if (!near[p]) near[p] = dist2(d.nodes[p], d.nodes[c]) < r2 ? 1 : 2;
            return near[p] == 1;
        };
        Bits in(nf);
        std::deque<std::size_t> queue{c};
        bool any = false;
        while (!queue.empty()) {
            const auto p = queue.front();
            queue.pop_front();
            for (auto h : d.node_fragments[p]) {
                if (in.test(h) || !inside(d.fragments[h].a) || !inside(d.fragments[h].b)) continue;
                in.set(h);
                any = true;
                queue.push_back(d.fragments[h].a == p ? d.fragments[h].b : d.fragments[h].a);
            }
        }
        if (any) sets.push_back(std::move(in));
    }

    // Drop duplicates and dominated sets.
    std::sort(sets.begin(), sets.end(), [](const Bits& a, const Bits& b) { return a.count() > b.count(); });
    std::vector<Bits> kept;
    for (auto& s : sets) {
        const bool dominated =
            std::any_of(kept.begin(), kept.end(), [&](const Bits& k) { return s.subset_of(k); });
        if (!dominated) kept.push_back(std::move(s));
    }
    return kept;
}

class SetCover {
public:
    SetCover(std::size_t universe, std::vector<Bits> sets, std::uint64_t budget)
        : n_(universe), sets_(std::move(sets)), budget_(budget), by_element_(universe) {
        for (std::size_t s = 0; s < sets_.size(); ++s) {
            sets_[s].for_each([&](std::size_t e) { by_element_[e].push_back(s); });
            max_size_ = std::max(max_size_, sets_[s].count());
        }
    }

    std::size_t solve(bool& exact) {
        best_ = greedy();
        Bits covered(n_);
        search(covered, 0);
        exact = !out_of_budget_;
        return best_;
    }

private:
    std::size_t greedy() const {
        Bits covered(n_);
        std::size_t used = 0;
        while (covered.count() < n_) {
            std::size_t pick = 0, gain = 0;
            for (std::size_t s = 0; s < sets_.size(); ++s) {
                const auto g = sets_[s].count_minus(covered);
                if (g > gain) gain = g, pick = s;
            }
            covered |= sets_[pick];
            ++used;
        }
        return used;
    }

    void search(const Bits& covered, std::size_t used) {
        if (out_of_budget_) return;
        if (++visited_ > budget_) {
            out_of_budget_ = true;
            return;
        }
        const std::size_t left = n_ - covered.count();
        if (left == 0) {
            best_ = std::min(best_, used);
            return;
        }
        if (used + (left + max_size_ - 1) / max_size_ >= best_) return;

        std::size_t pivot = 0, fewest = SIZE_MAX;
        for (std::size_t e = 0; e < n_; ++e) {
            if (!covered.test(e) && by_element_[e].size() < fewest) fewest = by_element_[e].size(), pivot = e;
        }
        std::vector<std::pair<std::size_t, std::size_t>> order;
        for (auto s : by_element_[pivot]) order.emplace_back(sets_[s].count_minus(covered), s);
        std::sort(order.begin(), order.end(), std::greater<>());
        for (const auto& [gain, s] : order) {
            Bits next = covered;
            next |= sets_[s];
            search(next, used + 1);
        }
    }

    std::size_t n_;
    std::vector<Bits> sets_;
    std::uint64_t budget_;
    std::vector<std::vector<std::size_t>> by_element_;
    std::size_t max_size_ = 1;
    std::size_t best_ = 0;
    std::uint64_t visited_ = 0;
    bool out_of_budget_ = false;
};

// ---- lower side: maximum independent set in the conflict graph ----

std::size_t find(std::vector<std::size_t>& p, std::size_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
}

/// conflict[x] = nodes y whose point lies in the component of g ∩ B(x, eps)
/// through x.
std::vector<Bits> ball_conflicts(const PLGraph& g, const Discretization& d, const Rational& eps2) {
    const std::size_t n = d.nodes.size();
    const std::size_t nv = g.num_vertices();
    std::vector<Bits> reach(n, Bits(n));
    for (std::size_t x = 0; x < n; ++x) {
        const Point& px = d.nodes[x];
        std::vector<char> meets(g.num_edges(), 0);
        for (std::size_t e = 0; e < g.num_edges(); ++e) {
            meets[e] = dist2_to_segment(px, g.vertex(g.edge(e).u), g.vertex(g.edge(e).v)) < eps2;
        }
        std::vector<std::size_t> parent(g.num_edges());
        std::iota(parent.begin(), parent.end(), 0);
        for (std::size_t v = 0; v < nv; ++v) {
            if (dist2(g.vertex(v), px) >= eps2) continue;
            const auto& inc = g.incident(v);
            for (std::size_t i = 1; i < inc.size(); ++i) parent[find(parent, inc[i])] = find(parent, inc[0]);
        }
        auto edge_of = [&](std::size_t node) { return node < nv ? g.incident(node).front() : d.node_edge[node]; };
        const std::size_t home = find(parent, edge_of(x));
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x || dist2(px, d.nodes[y]) >= eps2) continue;
            if (find(parent, edge_of(y)) == home) reach[x].set(y);
        }
    }
    std::vector<Bits> conflict(n, Bits(n));
    for (std::size_t x = 0; x < n; ++x) {
        reach[x].for_each([&](std::size_t y) {
            if (reach[y].test(x)) conflict[x].set(y);
        });
    }
    return conflict;
}

class IndependentSet {
public:
    IndependentSet(std::vector<Bits> conflict, std::uint64_t budget)
        : n_(conflict.size()), adj_(std::move(conflict)), budget_(budget) {}

    std::size_t solve(bool& exact) {
        Bits all(n_);
        for (std::size_t i = 0; i < n_; ++i) all.set(i);
        best_ = greedy(all);
        search(all, 0);
        exact = !out_of_budget_;
        return best_;
    }

private:
    std::size_t greedy(Bits p) const {
        std::size_t size = 0;
        while (!p.none()) {
            std::size_t pick = 0, deg = SIZE_MAX;
            p.for_each([&](std::size_t v) {
                Bits nb = adj_[v];
                nb &= p;
                if (nb.count() < deg) deg = nb.count(), pick = v;
            });
            p = p.minus(adj_[pick]);
            p.reset(pick);
            ++size;
        }
        return size;
    }

    /// Number of cliques in a greedy clique partition of p: an upper bound on
    /// any independent subset of p.
    std::size_t clique_bound(Bits p) const {
        std::size_t cliques = 0;
        while (!p.none()) {
            const std::size_t v = p.first();
            Bits cand = adj_[v];
            cand &= p;
            p.reset(v);
            while (!cand.none()) {
                const std::size_t w = cand.first();
                cand &= adj_[w];
                p.reset(w);
            }
            ++cliques;
        }
        return cliques;
    }

    void search(const Bits& p, std::size_t size) {
        if (out_of_budget_) return;
        if (++visited_ > budget_) {
            out_of_budget_ = true;
            return;
        }
        if (p.none()) {
            best_ = std::max(best_, size);
            return;
        }
        if (size + clique_bound(p) <= best_) return;

        // Some vertex of the closed neighbourhood of v is in every maximal set.
        std::size_t v = 0, deg = SIZE_MAX;
        p.for_each([&](std::size_t i) {
            Bits nb = adj_[i];
            nb &= p;
            if (nb.count() < deg) deg = nb.count(), v = i;
        });
        Bits branch = adj_[v];
        branch &= p;
        branch.set(v);
        Bits rest = p;
        branch.for_each([&](std::size_t w) {
            if (!rest.test(w)) return;
            Bits next = rest.minus(adj_[w]);
            next.reset(w);
            search(next, size + 1);
            rest.reset(w);
        });
    }

    std::size_t n_;
    std::vector<Bits> adj_;
    std::uint64_t budget_;
    std::size_t best_ = 0;
    std::uint64_t visited_ = 0;
    bool out_of_budget_ = false;
};

}  // namespace

OracleResult brute_force_oracle(const PLGraph& g, const Rational& epsilon, const Rational& delta,
                                const OracleOptions& opts) {
    if (g.num_edges() > opts.max_edges) {
        throw TooLarge("oracle accepts at most " + std::to_string(opts.max_edges) + " edges, graph has " +
                       std::to_string(g.num_edges()));
    }
    if (epsilon.sign() <= 0) throw InvalidArgument("epsilon must be positive");
    if (delta.sign() <= 0) throw InvalidArgument("delta must be positive");
    const Rational eps2 = epsilon * epsilon;

    OracleResult r;
    if (g.num_edges() == 0) {
        r.lower = r.upper = 1;
        r.nodes = 1;
        return r;
    }
    const Discretization d = discretize(g, delta);
    r.fragments = d.fragments.size();
    r.nodes = d.nodes.size();

    auto sets = candidate_sets(d, eps2);
    {
        Bits all(r.fragments);
        for (const auto& s : sets) all |= s;
        if (all.count() != r.fragments) throw InvalidArgument("delta too coarse: a fragment is at least eps long");
    }
    r.upper = SetCover(r.fragments, std::move(sets), opts.node_budget).solve(r.upper_exact);
    r.lower = IndependentSet(ball_conflicts(g, d, eps2), opts.node_budget).solve(r.lower_exact);
    return r;
}

}  // namespace sdimlab
