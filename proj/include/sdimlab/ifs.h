#pragma once

#include "sdimlab/budget.h"

#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sdimlab {

// Affine iterated function systems in binary64. Nothing here feeds a
// certificate; every geometric assertion carries an explicit tolerance.

struct Vec2 {
    double x = 0;
    double y = 0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance(const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// p -> linear * p + translation, linear stored row-major.
struct AffineMap2 {
    std::array<double, 4> linear{1, 0, 0, 1};
    Vec2 translation;

    Vec2 apply(const Vec2& p) const {
        return {linear[0] * p.x + linear[1] * p.y + translation.x, linear[2] * p.x + linear[3] * p.y + translation.y};
    }
    /// (*this) ∘ inner.
    AffineMap2 compose(const AffineMap2& inner) const;
};

/// Lipschitz constant of an affine map: the largest singular value of the
/// linear part.
double lip_affine(const AffineMap2& m);

class IFSSpec {
public:
    /// Throws DomainError unless there is at least one map and every map is a
    /// contraction.
    static IFSSpec make(std::string name, std::vector<AffineMap2> maps);

    const std::string& name() const { return name_; }
    const std::vector<AffineMap2>& maps() const { return maps_; }
    std::size_t n() const { return maps_.size(); }
    /// max_i Lip(f_i)
    double lambda() const { return lambda_; }

private:
    std::string name_;
    std::vector<AffineMap2> maps_;
    double lambda_ = 0;
};

/// -ln(n) / ln(lambda). Throws DomainError unless n >= 1 and 0 < lambda < 1.
double theorem2_bound(std::uint64_t n, double lambda);

/// f_{i1} ∘ ... ∘ f_{id}(seed) for every word of length `depth`, in
/// lexicographic word order. Throws SizeLimit when n^depth > budget.max_words.
std::vector<Vec2> attractor_cloud(const IFSSpec& s, unsigned depth, const Vec2& seed, const Budget& budget = {});

/// Unique fixed point of a contraction.
Vec2 fixed_point(const AffineMap2& m);

/// Diameter of the depth-`depth` clouds seeded at every map's fixed point.
/// Those points lie on the attractor, so this under-approximates its
/// diameter ("D (approx)").
double approximate_diameter(const IFSSpec& s, unsigned depth, const Budget& budget = {});

/// Convex hull, counter-clockwise, without collinear points.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts);
double cloud_diameter(const std::vector<Vec2>& pts);
double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

struct WordPiece {
    std::vector<std::uint32_t> word;  // i1 .. ik, outermost map first
    AffineMap2 map;                   // f_{i1} ∘ ... ∘ f_{ik}
    std::vector<Vec2> hull;           // image of the base cloud's hull
    double diameter = 0;
};

/// The family C_k: images of the base cloud under every word of length k.
/// An affine image of a convex hull is the hull of the image, so only hull
/// vertices are mapped.
struct WordCover {
    unsigned k = 0;
    double D = 0;  // diameter of the base cloud
    std::vector<WordPiece> pieces;
};

/// Throws SizeLimit when n^k > budget.max_words; std::logic_error if a piece
/// exceeds lambda^k D (1 + 1e-9).
WordCover word_cover(const IFSSpec& s, unsigned k, const std::vector<Vec2>& base_cloud, const Budget& budget = {});

struct K0 {
    std::uint64_t k0 = 1;
    double epsilon0 = 0;
};

/// -ln(n^k) / ln(lambda^(k-1) D), the quantity bounded in the proof of the
/// dimension estimate. Infinite when lambda^(k-1) D >= 1.
double word_ratio(std::uint64_t n, double lambda, double D, std::uint64_t k);

/// Least k0 with word_ratio(k) < bound + delta for every k >= k0 (checked
/// over a window past the first hit), and epsilon0 = lambda^(k0-1) D.
K0 find_k0(const IFSSpec& s, double delta, double D);

/// n^k for the k with lambda^k D < eps <= lambda^(k-1) D. Throws DomainError
/// unless 0 < eps <= D, SizeLimit when n^k overflows 64 bits.
std::uint64_t s_upper_ifs(const IFSSpec& s, double epsilon, double D);
/// The k used by s_upper_ifs.
std::uint64_t cover_level(const IFSSpec& s, double epsilon, double D);

IFSSpec sierpinski();
/// Four maps x/4 + {0, 3/4}^2. The attractor is totally disconnected.
IFSSpec cantor_dust();
/// x/2 and x/2 + (1/2, 0) on the unit segment.
IFSSpec segment_ifs();

/// {"name": .., "maps": [{"linear": [[a, b], [c, d]], "translation": [e, f]}]}
/// with every number a decimal string. Throws ParseError, DomainError.
IFSSpec parse_ifs_spec(std::string_view text);
nlohmann::json ifs_spec_json(const IFSSpec& s);

}  // namespace sdimlab
