#include "sdimlab/cover.h"

#include "sdimlab/errors.h"
#include "sdimlab/graph_io.h"

#include <algorithm>

namespace sdimlab {

bool verify_cover(const PLGraph& g, const CoverCertificate& c) {
    if (c.host != host_id(g)) throw HostMismatch("certificate host " + c.host + " is not graph " + host_id(g));
    if (c.epsilon.sign() <= 0) return false;
    const Rational eps2 = c.epsilon * c.epsilon;

    std::vector<std::vector<std::pair<Rational, Rational>>> per_edge(g.num_edges());
    std::vector<char> vertex_hit(g.num_vertices(), 0);
    for (const auto& el : c.elements) {
        if (el.empty() || !is_well_formed(g, el)) return false;
        if (!is_connected(g, el)) return false;
        if (subgraph_diameter2(g, el) >= eps2) return false;
        for (auto e : el.whole_edges) per_edge[e].emplace_back(Rational(0), Rational(1));
        for (const auto& p : el.partial_edges) per_edge[p.edge].emplace_back(p.s, p.t);
        for (auto v : el.anchor_vertices) vertex_hit[v] = 1;
    }

    for (auto& ivs : per_edge) {
        std::sort(ivs.begin(), ivs.end());
        Rational reach(0);
        bool started = false;
        for (const auto& [s, t] : ivs) {
            if (!started) {
                if (s.sign() != 0) return false;
                started = true;
            } else if (s > reach) {
                return false;
            }
            if (t > reach) reach = t;
        }
        if (!started || reach != Rational(1)) return false;
    }
    // Vertices are covered through their edges; only an edgeless graph needs anchors.
    if (g.num_edges() == 0) {
        return std::all_of(vertex_hit.begin(), vertex_hit.end(), [](char h) { return h != 0; });
    }
    return true;
}

}  // namespace sdimlab
