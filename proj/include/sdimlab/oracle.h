#pragma once

#include "sdimlab/geom.h"
#include "sdimlab/rational.h"

#include <cstddef>
#include <cstdint>

namespace sdimlab {

struct OracleOptions {
    std::size_t max_edges = 12;
    std::uint64_t node_budget = 2'000'000;  // search nodes per side
};

/// Bounds from an exhaustive search on a discretization of g. Every edge is
/// cut into ceil(length / delta) equal fragments (closed segments).
///
/// upper: fewest sets covering all fragments, chosen from a family of
/// connected fragment unions of diameter < eps (fragment runs grown from
/// every fragment, and ball pieces about every node).
///
/// lower: most fragment endpoints that are pairwise in conflict-free
/// position. x and y conflict when y lies in the component of g ∩ B(x, eps)
/// through x, computed exactly: a connected set of diameter < eps holding x
/// lies in that component.
///
/// A `*_exact` flag is false when the node budget ran out; the value is still
/// a valid bound, just possibly not the optimum of the search.
struct OracleResult {
    std::size_t lower = 0;
    std::size_t upper = 0;
    bool lower_exact = true;
    bool upper_exact = true;
    std::size_t fragments = 0;
    std::size_t nodes = 0;
};

/// Throws TooLarge when g has more than opts.max_edges edges and
/// InvalidArgument when delta <= 0 or some fragment is too long to fit in a
/// set of diameter < eps.
OracleResult brute_force_oracle(const PLGraph& g, const Rational& epsilon, const Rational& delta,
                                const OracleOptions& opts = {});

}  // namespace sdimlab
