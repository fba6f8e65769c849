#include "sdimlab/continuum.h"
#include "sdimlab/errors.h"
#include "sdimlab/graph_io.h"

#include "support.h"

#include <doctest.h>

#include <set>

using namespace sdimlab;
using sdimlab::testing::pt;
using sdimlab::testing::q;

namespace {

// Tent function straight from its two-branch definition.
mpq_class tent(const mpq_class& t) {
    mpz_class n;
    mpz_fdiv_q(n.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    const mpq_class f = t - n;
    return f <= mpq_class(1, 2) ? f : 1 - f;
}

// Vertex and edge counts of base + teeth by collecting the distinct points
// and the pieces directly.
std::pair<std::size_t, std::size_t> counted_shape(const std::vector<unsigned>& levels) {
    std::set<std::pair<mpq_class, mpq_class>> pts;
    std::size_t tooth_edges = 0;
    std::set<mpq_class> base_cuts{0, 1};
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const mpz_class half = mpz_class(1) << (levels[i] + 1);
        const mpq_class peak = mpq_class(1) / (mpz_class(i + 1) * half);
        for (mpz_class j = 0; j <= half; ++j) {
            const mpq_class x(j, half);
            const mpq_class y = (j % 2 == 0) ? mpq_class(0) : peak;
            pts.emplace(x, y);
            if (y == 0) base_cuts.insert(x);
        }
        tooth_edges += static_cast<std::size_t>(half.get_ui());
    }
    for (const auto& x : base_cuts) pts.emplace(x, 0);
    return {pts.size(), tooth_edges + base_cuts.size() - 1};
}

}  // namespace

TEST_CASE("phi examples") {
    CHECK(phi(q(1, 4)) == q(1, 4));
    CHECK(phi(q(3, 4)) == q(1, 4));
    CHECK(phi(q(5)) == q(0));
    CHECK(phi(q(-1, 4)) == q(1, 4));
}

TEST_CASE("phi_n examples") {
    CHECK(phi_n(0, q(1, 4)) == q(1, 4));
    CHECK(phi_n(1, q(3, 8)).raw() == mpq_class(1, 2) * tent(mpq_class(3, 4)));
    CHECK(phi_n(2, q(1, 8)).raw() == mpq_class(1, 4) * tent(mpq_class(1, 2)));
}

TEST_CASE("phi properties on random rationals") {
    testing::RationalGen gen(5);
    for (int i = 0; i < 400; ++i) {
        const Rational t = gen.next(6, 64);
        CHECK(phi(t + Rational(1)) == phi(t));
        const Rational frac = t - Rational(mpq_class(t.floor()));
        const Rational up = Rational(mpq_class(t.ceil())) - t;
        CHECK(phi(t) == min(frac, up));
        CHECK(phi(t).raw() == tent(t.raw()));
        for (unsigned n = 0; n < 5; ++n) {
            CHECK(phi_n(n, t) == Rational::pow2(-static_cast<long>(n)) * phi(Rational::pow2(n) * t));
        }
    }
}

TEST_CASE("n_k examples and block structure") {
    CHECK(n_k(1) == 0);
    CHECK(n_k(3) == 1);
    CHECK(n_k(15) == 2);
    CHECK(n_k(255) == 3);
    for (unsigned m = 0; m < 4; ++m) {
        const std::uint64_t lo = (std::uint64_t{1} << (1U << m)) - 1;
        const std::uint64_t hi = (std::uint64_t{1} << (1U << (m + 1))) - 2;
        CHECK(n_k(lo) == m);
        CHECK(n_k(hi) == m);
        if (lo > 1) CHECK(n_k(lo - 1) == m - 1);
    }
    CHECK(n_k(65534) == 3);
    CHECK(n_k(65535) == 4);
    CHECK(n_k(UINT64_MAX) == 6);
    unsigned prev = 0;
    for (std::uint64_t k = 1; k < 70000; ++k) {
        const unsigned v = n_k(k);
        CHECK_LE(prev, v);
        prev = v;
    }
}

TEST_CASE("tooth polylines") {
    const auto t1 = tooth_polyline(1, 0);
    CHECK(t1.breakpoints == std::vector<Point>{pt(0, 0), pt(q(1, 2), q(1, 2)), pt(1, 0)});
    const auto t3 = tooth_polyline(3, 1);
    CHECK(t3.breakpoints == std::vector<Point>{pt(0, 0), pt(q(1, 4), q(1, 12)), pt(q(1, 2), q(0)),
                                               pt(q(3, 4), q(1, 12)), pt(1, 0)});
    for (std::uint64_t k : {1, 7, 100}) CHECK(tooth_polyline(k, 0).breakpoints.size() == 3);
    for (unsigned level = 0; level < 6; ++level) {
        const auto t = tooth_polyline(5, level);
        CHECK(t.breakpoints.size() == (std::size_t{2} << level) + 1);
        for (std::size_t j = 0; j < t.breakpoints.size(); ++j) {
            const auto& p = t.breakpoints[j];
            CHECK(p.x == Rational(static_cast<long>(j)) * Rational::pow2(-static_cast<long>(level + 1)));
            CHECK(p.y.raw() == mpq_class(1, 5) * mpq_class(1, 1UL << level) * tent(p.x.raw() * (1UL << level)));
        }
    }
}

TEST_CASE("tooth amplitude decreases strictly along the n_k sequence") {
    Rational prev = tooth_amplitude(1, n_k(1));
    CHECK(prev == q(1, 2));
    for (std::uint64_t k = 2; k < 3000; ++k) {
        const Rational a = tooth_amplitude(k, n_k(k));
        CHECK(a.raw() == mpq_class(1) / (mpz_class(k) * (mpz_class(1) << (n_k(k) + 1))));
        CHECK(a < prev);
        prev = a;
    }
}

TEST_CASE("shark teeth examples") {
    for (auto [K, v, e] : {std::tuple{1u, 3u, 3u}, std::tuple{2u, 4u, 5u}, std::tuple{3u, 7u, 10u}}) {
        const auto g = build_shark_teeth(ToothSequenceSpec::paper(K));
        CHECK(g.num_vertices() == v);
        CHECK(g.num_edges() == e);
    }
    const auto g3 = build_shark_teeth(ToothSequenceSpec::paper(3));
    const auto& vs = g3.vertices();
    CHECK(std::find(vs.begin(), vs.end(), pt(q(1, 2), q(0))) != vs.end());
}

TEST_CASE("shark teeth counts match the closed form and a direct count") {
    for (unsigned K = 1; K <= 100; K += (K < 20 ? 1 : 9)) {
        const auto spec = ToothSequenceSpec::paper(K);
        const auto g = build_shark_teeth(spec);
        const auto pred = predicted_counts(spec);
        std::vector<unsigned> levels;
        for (unsigned k = 1; k <= K; ++k) levels.push_back(n_k(k));
        const auto [cv, ce] = counted_shape(levels);
        CHECK(g.num_vertices() == pred.vertices);
        CHECK(g.num_edges() == pred.edges);
        CHECK(pred.vertices == cv);
        CHECK(pred.edges == ce);
    }
    const auto w = ToothSequenceSpec::explicit_levels({1, 2, 3, 4, 5, 6});
    const auto gw = build_shark_teeth(w);
    const auto [cv, ce] = counted_shape({1, 2, 3, 4, 5, 6});
    CHECK(gw.num_vertices() == cv);
    CHECK(gw.num_edges() == ce);
}

TEST_CASE("teeth meet each other only on the base") {
    for (unsigned K : {3u, 15u, 40u}) {
        const auto g = build_shark_teeth(ToothSequenceSpec::paper(K));
        for (std::size_t v = 0; v < g.num_vertices(); ++v) {
            // A vertex above the base lies on exactly one tooth, so it has degree 2.
            if (g.vertex(v).y.sign() > 0) CHECK(g.incident(v).size() == 2);
        }
    }
}

TEST_CASE("decreasing levels trip the crossing assertion") {
    CHECK_THROWS_AS(build_shark_teeth(ToothSequenceSpec::explicit_levels({1, 0})), CrossingAssertionFailure);
}

TEST_CASE("budget caps the build") {
    Budget b;
    b.max_edges = 50;
    CHECK_THROWS_AS(build_shark_teeth(ToothSequenceSpec::paper(40), b), BudgetExceeded);
}

TEST_CASE("guard amplitude") {
    // A_4 with n_4 = 1.
    CHECK(guard_amplitude(ToothSequenceSpec::paper(3)) == q(1, 16));
    CHECK(guard_amplitude(ToothSequenceSpec::paper(1)) == q(1, 4));
    CHECK(guard_amplitude(ToothSequenceSpec::explicit_levels({1, 2, 3, 4, 5, 6})) == q(1, 7 * 128));
}

TEST_CASE("limit check") {
    const auto lc = limit_check(ToothSequenceSpec::paper(1), q(1), 300);
    CHECK(lc.rows.at(0).value == q(1));
    CHECK(lc.rows.at(2).value == q(2, 3));
    CHECK(lc.rows.at(254).value == q(8, 255));
    CHECK(lc.decreasing_tail);
    const auto half = limit_check(ToothSequenceSpec::paper(1), q(1, 2), 20);
    CHECK(half.power == 2);
    // (2^{n_3} / 3^{1/2})^2 = 4/3
    CHECK(half.rows.at(2).value == q(4, 3));
    CHECK_THROWS_AS(limit_check(ToothSequenceSpec::explicit_levels({0}), q(1), 5), InvalidArgument);
}

TEST_CASE("tooth spec files") {
    const auto p = parse_tooth_spec(R"({"kind": "paper", "K": 3})");
    CHECK(p.kind == ToothSequenceSpec::Kind::paper);
    CHECK(p.K == 3);
    const auto e = parse_tooth_spec(R"({"kind": "explicit", "K": 2, "levels": [0, 2]})");
    CHECK(e.level(2) == 2);
    CHECK(parse_tooth_spec(tooth_spec_json(e).dump()).levels == e.levels);
    CHECK_THROWS_AS(parse_tooth_spec("{"), ParseError);
    CHECK_THROWS_AS(parse_tooth_spec(R"({"kind": "paper", "K": 0})"), ParseError);
    CHECK_THROWS_AS(parse_tooth_spec(R"({"kind": "explicit", "K": 3, "levels": [0, 1]})"), ParseError);
    CHECK_THROWS_AS(parse_tooth_spec(R"({"kind": "spiral", "K": 3})"), ParseError);
}

TEST_CASE("graph files round trip exactly") {
    for (unsigned K : {1u, 3u, 15u}) {
        const auto g = build_shark_teeth(ToothSequenceSpec::paper(K));
        const auto doc = parse_graph(serialize_graph(g, {{"K", K}}));
        CHECK(doc.graph.vertices() == g.vertices());
        CHECK(doc.graph.edges() == g.edges());
        CHECK(doc.meta["K"] == K);
        CHECK(host_id(doc.graph) == host_id(g));
    }
    CHECK(host_id(testing::shark(2)) != host_id(testing::shark(3)));
}

TEST_CASE("graph files are validated") {
    CHECK_THROWS_AS(parse_graph("not json"), ParseError);
    CHECK_THROWS_AS(parse_graph(R"({"vertices": [["0/1", "0.5"]], "edges": []})"), ParseError);
    auto j = nlohmann::json::parse(serialize_graph(testing::unit_segment()));
    j["host"] = "0000000000000000";
    CHECK_THROWS_AS(parse_graph(j.dump()), ParseError);
    j = nlohmann::json::parse(serialize_graph(testing::cross_graph()));
    j.erase("host");
    j["edges"].push_back({0, 4});
    CHECK_THROWS(parse_graph(j.dump()));
}
