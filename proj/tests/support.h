#pragma once

#include "sdimlab/continuum.h"
#include "sdimlab/geom.h"
#include "sdimlab/rational.h"

#include <random>
#include <vector>

namespace sdimlab::testing {

inline Rational q(long n, long d = 1) { return Rational(n, d); }
inline Point pt(long x, long y) { return Point{Rational(x), Rational(y)}; }
inline Point pt(Rational x, Rational y) { return Point{std::move(x), std::move(y)}; }

inline PLGraph unit_segment() {
    std::vector<Segment> s{Segment(pt(0, 0), pt(1, 0))};
    return arrange(s);
}

inline PLGraph cross_graph() {
    std::vector<Segment> s{Segment(pt(0, 0), pt(1, 1)), Segment(pt(0, 1), pt(1, 0))};
    return arrange(s);
}

inline PLGraph l_shape() {
    std::vector<Segment> s{Segment(pt(0, 0), pt(1, 0)), Segment(pt(1, 0), pt(1, 1))};
    return arrange(s);
}

inline PLGraph shark(unsigned K) { return build_shark_teeth(ToothSequenceSpec::paper(K)); }

/// Random small rationals p/q with |p| <= range*den.
class RationalGen {
public:
    explicit RationalGen(std::uint64_t seed) : rng_(seed) {}

    Rational next(long range = 4, long max_den = 16) {
        std::uniform_int_distribution<long> den(1, max_den);
        const long d = den(rng_);
        std::uniform_int_distribution<long> num(-range * d, range * d);
        return Rational(num(rng_), d);
    }
    Rational unit(long max_den = 16) {
        std::uniform_int_distribution<long> den(1, max_den);
        const long d = den(rng_);
        std::uniform_int_distribution<long> num(0, d);
        return Rational(num(rng_), d);
    }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Segments with endpoints on a grid in [0,1]^2, each starting at an earlier
/// endpoint, so their union is connected.
inline std::vector<Segment> random_connected_segments(RationalGen& gen, int count, long max_den = 8) {
    std::vector<Point> anchors{Point{gen.unit(max_den), gen.unit(max_den)}};
    std::vector<Segment> segs;
    while (static_cast<int>(segs.size()) < count) {
        const Point a = anchors[gen.index(anchors.size())];
        Point b{gen.unit(max_den), gen.unit(max_den)};
        if (a == b) continue;
        segs.emplace_back(a, b);
        anchors.push_back(b);
    }
    return segs;
}

}  // namespace sdimlab::testing
