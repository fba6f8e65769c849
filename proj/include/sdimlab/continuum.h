#pragma once

#include "sdimlab/budget.h"
#include "sdimlab/geom.h"
#include "sdimlab/rational.h"

#include <json.hpp>

#include <cstdint>
#include <string_view>
#include <vector>

namespace sdimlab {

/// Which teeth make up a truncated shark-teeth continuum.
///
/// `paper`: tooth k has frequency exponent n_k = floor(log2 log2 (k+1)).
/// `explicit_levels`: tooth k has exponent levels[k-1]. Nondecreasing level
/// sequences are guaranteed crossing-free; others are accepted but fail the
/// crossing assertion in build_shark_teeth.
struct ToothSequenceSpec {
    enum class Kind { paper, explicit_levels };

    Kind kind = Kind::paper;
    unsigned K = 1;
    std::vector<unsigned> levels;

    static ToothSequenceSpec paper(unsigned K);
    static ToothSequenceSpec explicit_levels(std::vector<unsigned> levels);

    /// Frequency exponent of tooth k, 1 <= k <= K.
    unsigned level(std::uint64_t k) const;
    bool nondecreasing() const;
};

/// Distance from t to the nearest integer.
Rational phi(const Rational& t);

/// 2^-n phi(2^n t).
Rational phi_n(unsigned n, const Rational& t);

/// floor(log2 log2 (k+1)) by exact integer comparison k+1 >= 2^(2^n).
unsigned n_k(std::uint64_t k);

/// Peak height of (1/k) phi_level: 1 / (k 2^(level+1)).
Rational tooth_amplitude(std::uint64_t k, unsigned level);

struct ToothPolyline {
    std::uint64_t k = 1;
    unsigned level = 0;
    std::vector<Point> breakpoints;  // 2^(level+1) + 1 points, left to right
};

ToothPolyline tooth_polyline(std::uint64_t k, unsigned level);

/// arrange(base [0,1]x{0} + teeth 1..K). Throws CrossingAssertionFailure when
/// two teeth share a point above the base, BudgetExceeded when the predicted
/// edge count is over budget.
PLGraph build_shark_teeth(const ToothSequenceSpec& spec, const Budget& budget = {});

struct ShapeCounts {
    std::uint64_t vertices = 0;
    std::uint64_t edges = 0;
};

/// Closed form for nondecreasing levels: the base is split on the finest
/// dyadic grid 2^-M, M = max level, so
///   vertices = 2^M + 1 + sum_k 2^m_k,  edges = 2^M + sum_k 2^(m_k + 1).
ShapeCounts predicted_counts(const ToothSequenceSpec& spec);

/// Upper bound A_{K+1} on the height of every tooth beyond the truncation.
/// `paper` kind: 1/((K+1) 2^(n_{K+1}+1)). Explicit kind: 1/((K+1) 2^(m_K+1)),
/// valid for any nondecreasing continuation of the levels.
Rational guard_amplitude(const ToothSequenceSpec& spec);

struct LimitRow {
    std::uint64_t k = 0;
    Rational value;  // (2^{n_k} / k^alpha)^power
};

/// Table of 2^{n_k}/k^alpha for k = 1..k_max. For alpha = p/q the entries are
/// the exact q-th powers 2^{q n_k}/k^p (power = q); for integer alpha they are
/// the values themselves.
struct LimitCheck {
    Rational alpha;
    unsigned long power = 1;
    std::vector<LimitRow> rows;
    bool decreasing_tail = false;  // value(k_max) < value(1)
};

LimitCheck limit_check(const ToothSequenceSpec& spec, const Rational& alpha, std::uint64_t k_max);

/// {"kind": "paper"|"explicit", "K": n, "levels": [..]}
ToothSequenceSpec parse_tooth_spec(std::string_view text);
nlohmann::json tooth_spec_json(const ToothSequenceSpec& spec);

}  // namespace sdimlab
