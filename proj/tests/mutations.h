#pragma once

// Certificate mutations that are invalid by construction. Each returns
// nullopt when it does not apply to the given certificate.

#include "sdimlab/cover.h"
#include "sdimlab/errors.h"
#include "sdimlab/geom.h"

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sdimlab::testing {

inline Rational rational_below_sqrt(const Rational& r2) {
    // Some positive e with e^2 <= r2 (r2 > 0).
    Rational e(mpq_class(std::sqrt(r2.to_double()) * 0.999));
    while (e * e > r2) e = e * Rational(1, 2);
    return e;
}

inline bool piece_holds(const SubSet& s, std::size_t edge, const Rational& t) {
    for (auto e : s.whole_edges) {
        if (e == edge) return true;
    }
    for (const auto& p : s.partial_edges) {
        if (p.edge == edge && p.s <= t && t <= p.t) return true;
    }
    return false;
}

inline bool touches_edge(const SubSet& s, std::size_t edge) {
    for (auto e : s.whole_edges) {
        if (e == edge) return true;
    }
    for (const auto& p : s.partial_edges) {
        if (p.edge == edge) return true;
    }
    return false;
}

using CoverMutation = std::function<std::optional<CoverCertificate>(const PLGraph&, CoverCertificate, std::mt19937_64&)>;
using SeparationMutation =
    std::function<std::optional<SeparationCertificate>(const PLGraph&, SeparationCertificate, std::mt19937_64&)>;

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline std::vector<std::pair<std::string, CoverMutation>> cover_mutations() {
    return {
        {"uncover a point",
         [](const PLGraph& g, CoverCertificate c, std::mt19937_64& rng) -> std::optional<CoverCertificate> {
             const std::size_t e = pick(rng, g.num_edges());
             const Rational t(static_cast<long>(pick(rng, 65)), 64);
             std::erase_if(c.elements, [&](const SubSet& s) { return piece_holds(s, e, t); });
             return c;
         }},
        {"shrink epsilon to an element diameter",
         [](const PLGraph& g, CoverCertificate c, std::mt19937_64& rng) -> std::optional<CoverCertificate> {
             const auto& el = c.elements[pick(rng, c.elements.size())];
             const Rational d2 = subgraph_diameter2(g, el);
             if (d2.sign() == 0) return std::nullopt;
             c.epsilon = rational_below_sqrt(d2);
             return c;
         }},
        {"add a detached interior piece",
         [](const PLGraph& g, CoverCertificate c, std::mt19937_64& rng) -> std::optional<CoverCertificate> {
             auto& el = c.elements[pick(rng, c.elements.size())];
             std::vector<std::size_t> free;
             for (std::size_t e = 0; e < g.num_edges(); ++e) {
                 if (!touches_edge(el, e)) free.push_back(e);
             }
             if (free.empty()) return std::nullopt;
             el.partial_edges.push_back({free[pick(rng, free.size())], Rational(1, 3), Rational(2, 3)});
             return c;
         }},
        {"reverse a parameter interval",
         [](const PLGraph& g, CoverCertificate c, std::mt19937_64& rng) -> std::optional<CoverCertificate> {
             auto& el = c.elements[pick(rng, c.elements.size())];
             el.partial_edges.push_back({pick(rng, g.num_edges()), Rational(3, 4), Rational(1, 4)});
             return c;
         }},
        {"parameter beyond the edge",
         [](const PLGraph& g, CoverCertificate c, std::mt19937_64& rng) -> std::optional<CoverCertificate> {
             auto& el = c.elements[pick(rng, c.elements.size())];
             el.partial_edges.push_back({pick(rng, g.num_edges()), Rational(1, 2), Rational(3, 2)});
             return c;
         }},
        {"edge id out of range",
         [](const PLGraph& g, CoverCertificate c, std::mt19937_64& rng) -> std::optional<CoverCertificate> {
             c.elements[pick(rng, c.elements.size())].whole_edges.push_back(g.num_edges() + pick(rng, 5));
             return c;
         }},
        {"empty element",
         [](const PLGraph&, CoverCertificate c, std::mt19937_64&) -> std::optional<CoverCertificate> {
             c.elements.emplace_back();
             return c;
         }},
        {"nonpositive epsilon",
         [](const PLGraph&, CoverCertificate c, std::mt19937_64& rng) -> std::optional<CoverCertificate> {
             c.epsilon = Rational(-static_cast<long>(pick(rng, 3)), 7);
             return c;
         }},
        {"foreign host",
         [](const PLGraph&, CoverCertificate c, std::mt19937_64&) -> std::optional<CoverCertificate> {
             c.host = "ffffffffffffffff";
             return c;
         }},
    };
}

inline std::vector<std::pair<std::string, SeparationMutation>> separation_mutations() {
    return {
        {"relabel a disconnection witness as distance",
         [](const PLGraph&, SeparationCertificate s, std::mt19937_64& rng) -> std::optional<SeparationCertificate> {
             std::vector<std::size_t> idx;
             for (std::size_t i = 0; i < s.witnesses.size(); ++i) {
                 if (s.witnesses[i].kind == PairWitness::Kind::disconnection) idx.push_back(i);
             }
             if (idx.empty()) return std::nullopt;
             s.witnesses[idx[pick(rng, idx.size())]].kind = PairWitness::Kind::distance;
             return s;
         }},
        {"duplicate a point",
         [](const PLGraph&, SeparationCertificate s, std::mt19937_64& rng) -> std::optional<SeparationCertificate> {
             if (s.points.size() < 2) return std::nullopt;
             const std::size_t i = pick(rng, s.points.size());
             std::size_t j = pick(rng, s.points.size() - 1);
             if (j >= i) ++j;
             s.points[j] = s.points[i];
             return s;
         }},
        {"inflate epsilon past the diameter",
         [](const PLGraph& g, SeparationCertificate s, std::mt19937_64& rng) -> std::optional<SeparationCertificate> {
             if (s.points.size() < 2) return std::nullopt;
             const Rational d2 = graph_diameter2(g);
             Rational e(1);
             while (e * e <= d2) e = e * Rational(2);
             s.epsilon = e + Rational(static_cast<long>(pick(rng, 4)), 3);
             if (s.guard) s.guard->threshold = s.guard->amplitude;  // keep it from masking the change
             return s;
         }},
        {"drop a witness",
         [](const PLGraph&, SeparationCertificate s, std::mt19937_64& rng) -> std::optional<SeparationCertificate> {
             if (s.witnesses.empty()) return std::nullopt;
             s.witnesses.erase(s.witnesses.begin() + static_cast<long>(pick(rng, s.witnesses.size())));
             return s;
         }},
        {"repeat a witness",
         [](const PLGraph&, SeparationCertificate s, std::mt19937_64& rng) -> std::optional<SeparationCertificate> {
             if (s.witnesses.size() < 2) return std::nullopt;
             const std::size_t i = pick(rng, s.witnesses.size());
             std::size_t j = pick(rng, s.witnesses.size() - 1);
             if (j >= i) ++j;
             s.witnesses[j] = s.witnesses[i];
             return s;
         }},
        {"misstate a clipped graph",
         [](const PLGraph&, SeparationCertificate s, std::mt19937_64& rng) -> std::optional<SeparationCertificate> {
             std::vector<std::size_t> idx;
             for (std::size_t i = 0; i < s.witnesses.size(); ++i) {
                 if (s.witnesses[i].kind == PairWitness::Kind::disconnection) idx.push_back(i);
             }
             if (idx.empty()) return std::nullopt;
             auto& d = s.witnesses[idx[pick(rng, idx.size())]].disconnection;
             if (pick(rng, 2) == 0) d.clipped_fragments += 1 + pick(rng, 3);
             else d.center_component_size += 1 + pick(rng, 3);
             return s;
         }},
        {"point off the graph",
         [](const PLGraph& g, SeparationCertificate s, std::mt19937_64& rng) -> std::optional<SeparationCertificate> {
             if (s.points.empty()) return std::nullopt;
             auto& p = s.points[pick(rng, s.points.size())];
             if (pick(rng, 2) == 0) p = GraphPoint::on_edge(pick(rng, g.num_edges()), Rational(5, 4));
             else p = GraphPoint::at_vertex(g.num_vertices() + pick(rng, 3));
             return s;
         }},
        {"witness index out of range",
         [](const PLGraph&, SeparationCertificate s, std::mt19937_64& rng) -> std::optional<SeparationCertificate> {
             if (s.witnesses.empty()) return std::nullopt;
             s.witnesses[pick(rng, s.witnesses.size())].j = s.points.size() + pick(rng, 3);
             return s;
         }},
        {"guard threshold below amplitude + eps",
         [](const PLGraph&, SeparationCertificate s, std::mt19937_64& rng) -> std::optional<SeparationCertificate> {
             if (!s.guard) return std::nullopt;
             s.guard->threshold = s.guard->amplitude + s.epsilon - Rational(1, 1000 + static_cast<long>(pick(rng, 50)));
             return s;
         }},
        {"point under the guard",
         [](const PLGraph& g, SeparationCertificate s, std::mt19937_64& rng) -> std::optional<SeparationCertificate> {
             if (!s.guard || s.points.empty()) return std::nullopt;
             std::vector<std::size_t> low;
             for (std::size_t v = 0; v < g.num_vertices(); ++v) {
                 if (g.vertex(v).y < s.guard->threshold) low.push_back(v);
             }
             if (low.empty()) return std::nullopt;
             s.points[pick(rng, s.points.size())] = GraphPoint::at_vertex(low[pick(rng, low.size())]);
             return s;
         }},
        {"foreign host",
         [](const PLGraph&, SeparationCertificate s, std::mt19937_64&) -> std::optional<SeparationCertificate> {
             s.host = "0123456789abcdef";
             return s;
         }},
    };
}

/// Verification outcome that treats HostMismatch as a rejection.
template <class Cert, class Verify>
bool accepted(const PLGraph& g, const Cert& c, Verify&& verify) {
    try {
        return verify(g, c);
    } catch (const HostMismatch&) {
        return false;
    }
}

}  // namespace sdimlab::testing
