#include <doctest.h>

#include "alcove/farey.hpp"

using namespace alcove;

TEST_SUITE("farey") {

TEST_CASE("farey sequence basics") {
    const auto f5 = farey_sequence(5);
    REQUIRE(f5.size() == 11);
    CHECK(f5.front() == 0);
    CHECK(f5.back() == 1);
    for (std::size_t i = 1; i < f5.size(); ++i) CHECK(f5[i - 1] < f5[i]);
    CHECK(f5[1] == make_rational(1, 5));
    CHECK(f5[5] == make_rational(1, 2));
    // Unimodularity of consecutive pairs.
    for (std::size_t i = 1; i < f5.size(); ++i) {
        const Rational &a = f5[i - 1], &b = f5[i];
        CHECK(numerator(b) * denominator(a) - numerator(a) * denominator(b) == 1);
    }
}

TEST_CASE("farey neighbours") {
    const auto [lo, hi] = farey_neighbours(3, 10);
    CHECK(lo < make_rational(3, 10));
    CHECK(hi > make_rational(3, 10));
    // Unimodular on both sides of kappa/n.
    CHECK(denominator(lo) * 3 - numerator(lo) * 10 == 1);
    CHECK(numerator(hi) * 10 - denominator(hi) * 3 == 1);
    // Neighbours in F_10 really are adjacent to 3/10.
    const auto f10 = farey_sequence(10);
    for (const auto& q : f10) {
        if (q > lo && q < hi) CHECK(q == make_rational(3, 10));
    }
}

TEST_CASE("admissibility is Farey avoidance") {
    CHECK(is_admissible(make_rational(9, 40), 6));
    CHECK(is_admissible(make_rational(5, 12), 4));
    CHECK_FALSE(is_admissible(make_rational(1, 3), 6));   // denominator <= n
    CHECK_FALSE(is_admissible(make_rational(5, 6), 6));
    CHECK(is_admissible(make_rational(2, 7), 6));          // denominator 7 > 6
    CHECK_FALSE(is_admissible(make_rational(2, 7), 7));
    CHECK_THROWS_AS(is_admissible(Rational(0), 5), precondition_error);
    CHECK_THROWS_AS(is_admissible(Rational(1), 5), precondition_error);
}

TEST_CASE("mediant") {
    CHECK(mediant(make_rational(1, 3), make_rational(1, 2)) == make_rational(2, 5));
    CHECK(mediant(make_rational(1, 5), make_rational(1, 4)) == make_rational(2, 9));
}

TEST_CASE("interval classification over the full range") {
    const auto iv = classify_intervals(6, false);
    // Intervals tile (0,1) between consecutive excluded values of F_6.
    const auto f6 = farey_sequence(6);
    REQUIRE(iv.size() == f6.size() - 1);
    for (std::size_t i = 0; i < iv.size(); ++i) {
        CHECK(iv[i].lower == f6[i]);
        CHECK(iv[i].upper == f6[i + 1]);
        CHECK(iv[i].order_n == 6);
        const Rational mid = mediant(iv[i].lower, iv[i].upper);
        CHECK(iv[i].k_index == floor_long(6 * mid));
        const bool endpoint_at_n =
            denominator(iv[i].lower) == 6 || denominator(iv[i].upper) == 6;
        CHECK((iv[i].interval_type == IntervalType::TypeI) == endpoint_at_n);
    }
}

TEST_CASE("interval classification restricted to the lower half") {
    const auto half = classify_intervals(6, true);
    for (const auto& iv : half) CHECK(iv.lower < make_rational(1, 2));
    // (1/5, 1/4) is type (ii) for n = 6 and carries k = 1.
    bool found = false;
    for (const auto& iv : half) {
        if (iv.lower == make_rational(1, 5) && iv.upper == make_rational(1, 4)) {
            found = true;
            CHECK(iv.interval_type == IntervalType::TypeII);
            CHECK(iv.k_index == 1);
        }
    }
    CHECK(found);
}

TEST_CASE("interval counts for small orders") {
    const auto rows = interval_counts_table(4, 6);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].n == 4);
    CHECK(rows[0].type_i == 2);
    CHECK(rows[0].type_ii == 1);
    CHECK(rows[1].type_i == 4);
    CHECK(rows[1].type_ii == 1);
    CHECK(rows[2].type_i == 2);
    CHECK(rows[2].type_ii == 4);
}

TEST_CASE("type (i) intervals flank denominator-n fractions") {
    // For n = 7 the fraction 1/7 has denominator exactly 7, so both intervals
    // touching it are type (i).
    const auto iv = classify_intervals(7, true);
    for (const auto& r : iv) {
        if (r.upper == make_rational(1, 7) || r.lower == make_rational(1, 7))
            CHECK(r.interval_type == IntervalType::TypeI);
    }
}

}  // TEST_SUITE
