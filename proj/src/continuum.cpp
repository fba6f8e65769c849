#include "sdimlab/continuum.h"

#include "sdimlab/errors.h"

#include <algorithm>
#include <string>

namespace sdimlab {

ToothSequenceSpec ToothSequenceSpec::paper(unsigned K) {
    if (K < 1) throw InvalidArgument("truncation depth K must be >= 1");
    ToothSequenceSpec s;
    s.kind = Kind::paper;
    s.K = K;
    return s;
}

ToothSequenceSpec ToothSequenceSpec::explicit_levels(std::vector<unsigned> levels) {
    if (levels.empty()) throw InvalidArgument("explicit tooth sequence needs at least one level");
    ToothSequenceSpec s;
    s.kind = Kind::explicit_levels;
    s.K = static_cast<unsigned>(levels.size());
    s.levels = std::move(levels);
    return s;
}

unsigned ToothSequenceSpec::level(std::uint64_t k) const {
    if (kind == Kind::paper) return n_k(k);
    return levels.at(static_cast<std::size_t>(k - 1));
}

bool ToothSequenceSpec::nondecreasing() const {
    return kind == Kind::paper || std::is_sorted(levels.begin(), levels.end());
}

Rational phi(const Rational& t) {
    const Rational frac = t - Rational(mpq_class(t.floor()));
    const Rational rest = Rational(1) - frac;
    return min(frac, rest);
}

Rational phi_n(unsigned n, const Rational& t) {
    const long e = static_cast<long>(n);
    return Rational::pow2(-e) * phi(Rational::pow2(e) * t);
}

unsigned n_k(std::uint64_t k) {
    if (k < 1) throw InvalidArgument("n_k is defined for k >= 1");
    mpz_class kp1(std::to_string(k));
    kp1 += 1;
    unsigned n = 0;
    for (;;) {
        // Is k+1 >= 2^(2^(n+1))?
        mpz_class tower;
        mpz_ui_pow_ui(tower.get_mpz_t(), 2, 1UL << (n + 1));
        if (kp1 < tower) return n;
        ++n;
    }
}

Rational tooth_amplitude(std::uint64_t k, unsigned level) {
    mpq_class q(1);
    q.get_den() = mpz_class(std::to_string(k));
    mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), level + 1);
    return Rational(std::move(q));
}

ToothPolyline tooth_polyline(std::uint64_t k, unsigned level) {
    if (k < 1) throw InvalidArgument("tooth index must be >= 1");
    ToothPolyline out;
    out.k = k;
    out.level = level;
    const std::uint64_t steps = std::uint64_t{1} << (level + 1);
    const Rational step = Rational::pow2(-static_cast<long>(level) - 1);
    const Rational peak = tooth_amplitude(k, level);
    out.breakpoints.reserve(steps + 1);
    Rational t;
    for (std::uint64_t j = 0; j <= steps; ++j) {
        out.breakpoints.push_back(Point{t, (j % 2 == 1) ? peak : Rational(0)});
        t += step;
    }
    return out;
}

ShapeCounts predicted_counts(const ToothSequenceSpec& spec) {
    ShapeCounts c;
    unsigned top = 0;
    for (std::uint64_t k = 1; k <= spec.K; ++k) {
        const unsigned m = spec.level(k);
        if (m > 40) throw BudgetExceeded("tooth level " + std::to_string(m) + " is beyond desk scale");
        top = std::max(top, m);
        c.vertices += std::uint64_t{1} << m;
        c.edges += std::uint64_t{1} << (m + 1);
    }
    c.vertices += (std::uint64_t{1} << top) + 1;
    c.edges += std::uint64_t{1} << top;
    return c;
}

PLGraph build_shark_teeth(const ToothSequenceSpec& spec, const Budget& budget) {
    if (spec.K < 1) throw InvalidArgument("truncation depth K must be >= 1");
    if (spec.kind == ToothSequenceSpec::Kind::explicit_levels && spec.levels.size() != spec.K) {
        throw InvalidArgument("levels must have exactly K entries");
    }
    // Crossing teeth only add vertices, so the closed form is a lower bound
    // on the size in every case.
    const ShapeCounts predicted = predicted_counts(spec);
    if (predicted.edges > budget.max_edges) {
        throw BudgetExceeded("shark teeth with K=" + std::to_string(spec.K) + " needs " +
                             std::to_string(predicted.edges) + " edges");
    }

    std::vector<Segment> segments;
    segments.emplace_back(Point{Rational(0), Rational(0)}, Point{Rational(1), Rational(0)});
    std::vector<unsigned> levels(spec.K);
    for (std::uint64_t k = 1; k <= spec.K; ++k) {
        levels[k - 1] = spec.level(k);
        const auto tooth = tooth_polyline(k, levels[k - 1]);
        for (std::size_t i = 0; i + 1 < tooth.breakpoints.size(); ++i) {
            segments.emplace_back(tooth.breakpoints[i], tooth.breakpoints[i + 1]);
        }
    }
    PLGraph g = arrange(segments);
    if (g.num_edges() > budget.max_edges) {
        throw BudgetExceeded("arrangement has " + std::to_string(g.num_edges()) + " edges");
    }

    // Every vertex above the base must lie on exactly one tooth.
    for (const auto& p : g.vertices()) {
        if (p.y.sign() <= 0) continue;
        unsigned on = 0;
        for (std::uint64_t k = 1; k <= spec.K; ++k) {
            if (p.y > tooth_amplitude(k, levels[k - 1])) continue;
            if (p.y * Rational(static_cast<long>(k)) == phi_n(levels[k - 1], p.x)) ++on;
        }
        if (on > 1) {
            throw CrossingAssertionFailure("teeth intersect above the base at (" + p.x.str() + ", " +
                                           p.y.str() + ")");
        }
    }
    return g;
}

Rational guard_amplitude(const ToothSequenceSpec& spec) {
    const std::uint64_t next = std::uint64_t{spec.K} + 1;
    const unsigned level = spec.kind == ToothSequenceSpec::Kind::paper ? n_k(next) : spec.level(spec.K);
    return tooth_amplitude(next, level);
}

LimitCheck limit_check(const ToothSequenceSpec& spec, const Rational& alpha, std::uint64_t k_max) {
    if (spec.kind != ToothSequenceSpec::Kind::paper) {
        throw InvalidArgument("limit_check applies to the n_k tooth sequence");
    }
    if (alpha.sign() <= 0) throw InvalidArgument("alpha must be positive");
    if (k_max < 1) throw InvalidArgument("k_max must be >= 1");
    if (!alpha.num().fits_ulong_p() || !alpha.den().fits_ulong_p()) {
        throw InvalidArgument("alpha numerator/denominator too large");
    }
    const unsigned long p = alpha.num().get_ui();
    const unsigned long q = alpha.den().get_ui();

    LimitCheck out;
    out.alpha = alpha;
    out.power = q;
    out.rows.reserve(k_max);
    for (std::uint64_t k = 1; k <= k_max; ++k) {
        mpq_class v;
        mpz_set_ui(v.get_num_mpz_t(), 1);
        mpz_mul_2exp(v.get_num_mpz_t(), v.get_num_mpz_t(), static_cast<mp_bitcnt_t>(q) * n_k(k));
        mpz_class kk(std::to_string(k));
        mpz_pow_ui(v.get_den_mpz_t(), kk.get_mpz_t(), p);
        out.rows.push_back(LimitRow{k, Rational(std::move(v))});
    }
    out.decreasing_tail = out.rows.back().value < out.rows.front().value;
    return out;
}

ToothSequenceSpec parse_tooth_spec(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("tooth spec is not JSON: ") + ex.what());
    }
    try {
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "paper") {
            const auto K = j.at("K").get<long long>();
            if (K < 1 || K > 10'000'000) throw ParseError("K out of range");
            return ToothSequenceSpec::paper(static_cast<unsigned>(K));
        }
        if (kind == "explicit") {
            std::vector<unsigned> levels;
            for (const auto& v : j.at("levels")) {
                const auto m = v.get<long long>();
                if (m < 0 || m > 40) throw ParseError("tooth level out of range");
                levels.push_back(static_cast<unsigned>(m));
            }
            if (levels.empty()) throw ParseError("explicit spec needs at least one level");
            if (j.contains("K") && j["K"].get<long long>() != static_cast<long long>(levels.size())) {
                throw ParseError("K does not match the number of levels");
            }
            return ToothSequenceSpec::explicit_levels(std::move(levels));
        }
        throw ParseError("unknown tooth spec kind '" + kind + "'");
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed tooth spec: ") + ex.what());
    }
}

nlohmann::json tooth_spec_json(const ToothSequenceSpec& spec) {
    nlohmann::json j;
    j["kind"] = spec.kind == ToothSequenceSpec::Kind::paper ? "paper" : "explicit";
    j["K"] = spec.K;
    if (spec.kind == ToothSequenceSpec::Kind::explicit_levels) j["levels"] = spec.levels;
    return j;
}

}  // namespace sdimlab
