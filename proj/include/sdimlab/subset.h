#pragma once

#include "sdimlab/rational.h"

#include <cstddef>
#include <vector>

namespace sdimlab {

class PLGraph;

/// The part of an edge with parameters in the closed interval [s, t].
struct PartialEdge {
    std::size_t edge = 0;
    Rational s;
    Rational t;
};

/// A closed subset of a PLGraph built from whole edges, parameter intervals
/// of edges, and single vertices. One cover element.
struct SubSet {
    std::vector<std::size_t> whole_edges;
    std::vector<PartialEdge> partial_edges;
    std::vector<std::size_t> anchor_vertices;

    bool empty() const {
        return whole_edges.empty() && partial_edges.empty() && anchor_vertices.empty();
    }
};

/// Indices in range and 0 <= s <= t <= 1 for every partial piece.
bool is_well_formed(const PLGraph& g, const SubSet& s);

/// True iff the union of the pieces is connected. Pieces on one edge touch
/// when their intervals meet; pieces on different edges touch only through a
/// shared vertex, which relies on the host being a proper arrangement.
/// Requires is_well_formed; an empty subset is reported as not connected.
bool is_connected(const PLGraph& g, const SubSet& s);

}  // namespace sdimlab
