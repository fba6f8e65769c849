#pragma once

#include "sdimlab/rational.h"
#include "sdimlab/subset.h"

#include <cstddef>
#include <span>
#include <vector>

namespace sdimlab {

struct Point {
    Rational x;
    Rational y;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

/// A straight segment with distinct endpoints.
class Segment {
public:
    Segment(Point a, Point b);

    const Point& a() const { return a_; }
    const Point& b() const { return b_; }

private:
    Point a_;
    Point b_;
};

/// Exact squared Euclidean distance.
Rational dist2(const Point& p, const Point& q);

/// Exact squared distance from p to the closed segment [a, b].
Rational dist2_to_segment(const Point& p, const Point& a, const Point& b);

/// a + t (b - a).
Point lerp(const Point& a, const Point& b, const Rational& t);

struct Edge {
    std::size_t u = 0;  // u < v
    std::size_t v = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Connected straight-edge plane graph in which edges meet only at shared
/// endpoints. Immutable; the constructor checks every invariant.
class PLGraph {
public:
    PLGraph(std::vector<Point> vertices, std::vector<Edge> edges);

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Point& vertex(std::size_t i) const { return vertices_[i]; }
    const Edge& edge(std::size_t i) const { return edges_[i]; }

    /// Edge ids incident to vertex v, ascending.
    const std::vector<std::size_t>& incident(std::size_t v) const { return incident_[v]; }

    /// The point at parameter t of edge e, measured from vertex u.
    Point point_at(std::size_t e, const Rational& t) const;
    Rational edge_length2(std::size_t e) const;

private:
    std::vector<Point> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> incident_;
};

/// How two closed segments meet. Parameters are along the first segment
/// (t) and the second (u).
struct SegmentMeet {
    enum class Kind { none, point, overlap } kind = Kind::none;
    Rational t, u;        // kind == point
    Rational t0, t1;      // kind == overlap: sub-interval of the first segment
};

SegmentMeet intersect(const Point& a0, const Point& a1, const Point& b0, const Point& b1);

/// Proper arrangement of the union of the segments: every crossing or touching
/// point becomes a vertex, collinear overlaps are merged, vertices are sorted
/// by (x, y) and edges by (u, v). Throws DisconnectedInput when the union is
/// not connected.
PLGraph arrange(std::span<const Segment> segments);

/// The segments of g's edges, in edge order.
std::vector<Segment> edge_segments(const PLGraph& g);

/// Brute-force check over all edge pairs that edges meet only in shared
/// endpoints. Independent of arrange; meant for tests and file loading.
bool is_proper_arrangement(const std::vector<Point>& vertices, const std::vector<Edge>& edges);

/// Exact squared diameter of the point set of s. Distance is convex, so the
/// maximum over each piece is attained at piece endpoints.
Rational subgraph_diameter2(const PLGraph& g, const SubSet& s);

/// Endpoints of every piece of s (with repetition).
std::vector<Point> subset_endpoints(const PLGraph& g, const SubSet& s);

/// Squared diameter of the whole graph.
Rational graph_diameter2(const PLGraph& g);

}  // namespace sdimlab
