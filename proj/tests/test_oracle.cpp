#include "sdimlab/continuum.h"
#include "sdimlab/cover.h"
#include "sdimlab/errors.h"
#include "sdimlab/oracle.h"

#include "support.h"

#include <doctest.h>

using namespace sdimlab;
using sdimlab::testing::q;

TEST_CASE("oracle on the unit segment") {
    const auto seg = testing::unit_segment();
    const auto r = brute_force_oracle(seg, q(1, 2), q(1, 16));
    CHECK(r.lower == 3);
    CHECK(r.upper == 3);
    CHECK(r.lower_exact);
    CHECK(r.upper_exact);
    CHECK(r.fragments == 16);
    for (long m = 2; m <= 4; ++m) {
        const auto rm = brute_force_oracle(seg, q(1, m), q(1, 8 * m));
        CHECK(rm.lower == static_cast<std::size_t>(m + 1));
        CHECK(rm.upper == static_cast<std::size_t>(m + 1));
    }
    const auto whole = brute_force_oracle(seg, q(2), q(1, 4));
    CHECK(whole.lower == 1);
    CHECK(whole.upper == 1);
}

TEST_CASE("oracle preconditions") {
    CHECK_THROWS_AS(brute_force_oracle(testing::shark(15), q(1, 4), q(1, 32)), TooLarge);
    OracleOptions tight;
    tight.max_edges = 2;
    CHECK_THROWS_AS(brute_force_oracle(testing::shark(3), q(1, 4), q(1, 32), tight), TooLarge);
    CHECK_THROWS_AS(brute_force_oracle(testing::unit_segment(), q(1, 4), q(0)), InvalidArgument);
    CHECK_THROWS_AS(brute_force_oracle(testing::unit_segment(), q(0), q(1, 4)), InvalidArgument);
    // A fragment of length 1/2 cannot sit in a set of diameter < 1/4.
    CHECK_THROWS_AS(brute_force_oracle(testing::unit_segment(), q(1, 4), q(1, 2)), InvalidArgument);
}

TEST_CASE("oracle brackets agree with the library on small fixtures") {
    const std::vector<std::pair<const char*, PLGraph>> fixtures{
        {"segment", testing::unit_segment()},
        {"M1", testing::shark(1)},
        {"M2", testing::shark(2)},
        {"M3", testing::shark(3)},
        {"levels 0,1", build_shark_teeth(ToothSequenceSpec::explicit_levels({0, 1}))},
        {"cross", testing::cross_graph()},
    };
    for (const auto& [name, g] : fixtures) {
        for (long m : {2L, 4L, 8L}) {
            const Rational eps = q(1, m);
            const auto lib = s_bounds(g, eps);
            const auto orc = brute_force_oracle(g, eps, eps / q(4));
            INFO(name << " eps=1/" << m << " library [" << lib.lower << "," << lib.upper << "] oracle ["
                      << orc.lower << "," << orc.upper << "]");
            CHECK(orc.lower <= orc.upper);
            CHECK(lib.lower <= orc.upper);
            CHECK(orc.lower <= lib.upper);
        }
    }
}
