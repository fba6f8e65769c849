#include "sdimlab/subset.h"

#include "sdimlab/geom.h"

#include <algorithm>
#include <map>
#include <numeric>

namespace sdimlab {

bool is_well_formed(const PLGraph& g, const SubSet& s) {
    for (auto e : s.whole_edges) {
        if (e >= g.num_edges()) return false;
    }
    for (const auto& p : s.partial_edges) {
        if (p.edge >= g.num_edges()) return false;
        if (p.s.sign() < 0 || p.t > Rational(1) || p.t < p.s) return false;
    }
    for (auto v : s.anchor_vertices) {
        if (v >= g.num_vertices()) return false;
    }
    return true;
}

bool is_connected(const PLGraph& g, const SubSet& s) {
    struct Piece {
        std::size_t edge;
        Rational s, t;
    };
    std::vector<Piece> pieces;
    for (auto e : s.whole_edges) pieces.push_back({e, Rational(0), Rational(1)});
    for (const auto& p : s.partial_edges) pieces.push_back({p.edge, p.s, p.t});

    // Nodes: pieces first, then every vertex that some piece or anchor touches.
    std::map<std::size_t, std::size_t> vertex_node;
    auto node_for_vertex = [&](std::size_t v) {
        auto [it, fresh] = vertex_node.try_emplace(v, pieces.size() + vertex_node.size());
        return it->second;
    };
    std::vector<std::pair<std::size_t, std::size_t>> links;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Edge& e = g.edge(pieces[i].edge);
        if (pieces[i].s.sign() == 0) links.emplace_back(i, node_for_vertex(e.u));
        if (pieces[i].t == Rational(1)) links.emplace_back(i, node_for_vertex(e.v));
    }
    std::vector<std::size_t> members(pieces.size());
    std::iota(members.begin(), members.end(), 0);
    for (auto v : s.anchor_vertices) members.push_back(node_for_vertex(v));
    if (members.empty()) return false;

    // Overlapping intervals on the same edge.
    std::vector<std::size_t> order(pieces.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (pieces[a].edge != pieces[b].edge) return pieces[a].edge < pieces[b].edge;
        return pieces[a].s < pieces[b].s;
    });
    for (std::size_t k = 0; k < order.size();) {
        std::size_t run = order[k];
        Rational reach = pieces[run].t;
        std::size_t j = k + 1;
        for (; j < order.size() && pieces[order[j]].edge == pieces[run].edge; ++j) {
            const Piece& p = pieces[order[j]];
            if (p.s <= reach) {
                links.emplace_back(run, order[j]);
                if (p.t > reach) reach = p.t;
            } else {
                run = order[j];
                reach = p.t;
            }
        }
        k = j;
    }

    std::vector<std::size_t> parent(pieces.size() + vertex_node.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : links) parent[find(a)] = find(b);
    const std::size_t root = find(members.front());
    return std::all_of(members.begin(), members.end(), [&](std::size_t m) { return find(m) == root; });
}

}  // namespace sdimlab
