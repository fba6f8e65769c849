#pragma once

#include "sdimlab/budget.h"
#include "sdimlab/geom.h"
#include "sdimlab/rational.h"
#include "sdimlab/subset.h"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sdimlab {

// Certified two-sided bounds on S_eps, the least number of connected sets of
// diameter < eps covering a graph.
//
// Cover elements are closed. This loses nothing: the closure of a connected
// set is connected and has the same diameter, so closing every element of an
// optimal cover gives a closed cover of the same size.

/// Witness that S_eps(host) <= elements.size().
struct CoverCertificate {
    Rational epsilon;
    std::vector<SubSet> elements;
    std::string host;
};

/// A point of a graph: a vertex, or an edge parameter in [0, 1].
struct GraphPoint {
    std::optional<std::size_t> vertex;
    std::size_t edge = 0;
    Rational param;

    static GraphPoint at_vertex(std::size_t v) { return GraphPoint{v, 0, Rational(0)}; }
    static GraphPoint on_edge(std::size_t e, Rational t) { return GraphPoint{std::nullopt, e, std::move(t)}; }
};

bool is_valid_point(const PLGraph& g, const GraphPoint& p);
Point locate(const PLGraph& g, const GraphPoint& p);

/// The points of x and y lie in different components of the clipped graph:
/// every edge split into 2^p equal fragments of length <= delta, keeping the
/// fragments that meet the closed ball of radius eps about the center. The
/// clipped graph contains host ∩ B(center, eps), and any connected set of
/// diameter < eps through the center lies in that ball.
struct DisconnectionWitness {
    std::size_t center = 0;  // index of the ball center among the pair's points
    Rational delta;
    std::size_t clipped_fragments = 0;
    std::size_t center_component_size = 0;
};

struct PairWitness {
    enum class Kind { distance, disconnection };

    std::size_t i = 0;  // i < j, indices into SeparationCertificate::points
    std::size_t j = 0;
    Kind kind = Kind::distance;
    DisconnectionWitness disconnection;  // kind == disconnection
};

/// Transfers a lower bound from the truncation M_K to the full continuum:
/// every point sits at height >= threshold >= amplitude + eps, so any set of
/// diameter < eps through it stays above every omitted tooth.
struct TruncationGuard {
    unsigned K = 0;
    Rational amplitude;  // A_{K+1}
    Rational threshold;  // h*
};

/// Witness that S_eps(host) >= points.size(): no two points fit in one
/// connected set of diameter < eps.
struct SeparationCertificate {
    Rational epsilon;
    std::vector<GraphPoint> points;
    std::vector<PairWitness> witnesses;
    std::optional<TruncationGuard> guard;
    std::string host;
};

struct CoverOptions {
    /// Cut points are multiples of 2^-grid_bits along each edge.
    unsigned grid_bits = 40;
};

/// Greedy cover: repeatedly anchors at the first uncovered point in (edge,
/// parameter) order and grows a piece breadth-first, extending each edge
/// fragment as far as the squared diameter stays < eps^2.
CoverCertificate upper_cover(const PLGraph& g, const Rational& epsilon, const CoverOptions& opts = {});

struct GuardRequest {
    unsigned K = 0;
    Rational amplitude;  // from guard_amplitude(spec)
};

struct SeparationOptions {
    /// Ball-clip granularity; eps/8 when unset.
    std::optional<Rational> delta;
    /// Add edge-interior candidates spaced >= eps apart along every edge.
    bool interior_sampling = true;
    std::optional<GuardRequest> guard;
    Budget budget;
};

/// Greedy maximal set of pairwise separated candidates (vertices by
/// decreasing height, then interior samples by edge and parameter), with a
/// witness for every pair.
SeparationCertificate lower_separation(const PLGraph& g, const Rational& epsilon,
                                       const SeparationOptions& opts = {});

/// A witness that x and y cannot share a connected set of diameter < eps,
/// using the ball about x. Empty result means inconclusive.
std::optional<DisconnectionWitness> disconnection_witness(const PLGraph& g, const GraphPoint& x,
                                                          const GraphPoint& y, const Rational& epsilon,
                                                          const Rational& delta);

/// Exact re-check of every CoverCertificate invariant. Throws HostMismatch
/// when the certificate names another graph.
bool verify_cover(const PLGraph& g, const CoverCertificate& c);

/// Exact re-check of every pair witness and of the guard inequalities.
/// Throws HostMismatch when the certificate names another graph.
bool verify_separation(const PLGraph& g, const SeparationCertificate& s);

struct Bounds {
    std::size_t lower = 0;
    std::size_t upper = 0;
};

Bounds s_bounds(const PLGraph& g, const Rational& epsilon, const SeparationOptions& sep = {},
                const CoverOptions& cov = {});

/// Fragments meeting a closed ball, with the connected components of their
/// union. Shared by the witness search and the separation verifier.
class BallClip {
public:
    BallClip(const PLGraph& g, const Point& center, const Rational& epsilon, const Rational& delta);

    std::size_t fragment_count() const { return fragment_count_; }
    /// Component label of the fragment(s) holding p, or nullopt when p lies
    /// outside the clipped graph.
    std::optional<std::size_t> component_of(const GraphPoint& p) const;
    std::size_t component_size(std::size_t label) const { return comp_size_[label]; }

    /// Fragments per edge: 2^p with p minimal such that length / 2^p <= delta.
    static std::uint64_t fragments_per_edge(const Rational& length2, const Rational& delta);

private:
    struct EdgeRange {
        std::uint64_t pieces = 0;
        std::uint64_t lo = 1, hi = 0;  // included fragment indices [lo, hi]
        std::size_t first_node = 0;
    };

    std::optional<std::size_t> node_of(std::size_t edge, std::uint64_t fragment) const;

    const PLGraph* g_;
    std::vector<EdgeRange> ranges_;
    std::vector<std::size_t> label_;  // per node
    std::vector<std::size_t> comp_size_;
    std::size_t fragment_count_ = 0;
};

}  // namespace sdimlab
