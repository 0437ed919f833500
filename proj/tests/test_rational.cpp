#include <doctest.h>

#include "alcove/rational.hpp"

using namespace alcove;

TEST_SUITE("rational") {

TEST_CASE("parse and render") {
    CHECK(rational_str(parse_rational("3/10")) == "3/10");
    CHECK(rational_str(parse_rational("2/4")) == "1/2");
    CHECK(rational_str(parse_rational("-1/2")) == "-1/2");
    CHECK(rational_str(parse_rational("7")) == "7");
    CHECK(rational_str(parse_rational("0")) == "0");
    CHECK(rational_str(parse_rational(" 9 / 40 ")) == "9/40");
    CHECK(parse_rational("23/160") == make_rational(23, 160));
}

TEST_CASE("parse rejects malformed literals") {
    CHECK_THROWS_AS(parse_rational(""), parse_error);
    CHECK_THROWS_AS(parse_rational("abc"), parse_error);
    CHECK_THROWS_AS(parse_rational("1/0"), parse_error);
    CHECK_THROWS_AS(parse_rational("1//2"), parse_error);
    CHECK_THROWS_AS(parse_rational("1/2/3"), parse_error);
    CHECK_THROWS_AS(parse_rational("1.5"), parse_error);
}

TEST_CASE("make_rational normalises and guards") {
    CHECK(make_rational(-2, -4) == make_rational(1, 2));
    CHECK(make_rational(3, -9) == make_rational(-1, 3));
    CHECK_THROWS_AS(make_rational(1, 0), precondition_error);
}

TEST_CASE("floor and fractional part") {
    CHECK(floor_long(make_rational(7, 2)) == 3);
    CHECK(floor_long(make_rational(-7, 2)) == -4);
    CHECK(floor_long(Rational(5)) == 5);
    CHECK(frac_part(make_rational(7, 2)) == make_rational(1, 2));
    CHECK(frac_part(make_rational(-1, 3)) == make_rational(2, 3));
    CHECK(frac_part(Rational(4)) == 0);
}

TEST_CASE("integrality predicates") {
    CHECK(is_integer(Rational(3)));
    CHECK_FALSE(is_integer(make_rational(3, 2)));
    CHECK(is_integer_multiple(make_rational(3, 10), 10));
    CHECK(is_integer_multiple(make_rational(3, 10), 20));
    CHECK_FALSE(is_integer_multiple(make_rational(3, 10), 7));
    CHECK_THROWS_AS(is_integer_multiple(make_rational(1, 2), 0), precondition_error);
}

TEST_CASE("affine forms") {
    const AffineForm f{make_rational(1, 3), make_rational(-2, 1)};
    CHECK(evaluate(f, make_rational(1, 6)) == 0);
    CHECK(evaluate(f, Rational(0)) == make_rational(1, 3));

    const AffineForm g = interpolate_affine(make_rational(1, 4), make_rational(1, 2),
                                            make_rational(1, 2), Rational(1));
    CHECK(g.const_part == 0);
    CHECK(g.slope == 2);
    CHECK(evaluate(g, make_rational(3, 8)) == make_rational(3, 4));
    CHECK_THROWS_AS(
        interpolate_affine(make_rational(1, 4), Rational(0), make_rational(1, 4), Rational(1)),
        precondition_error);
}

TEST_CASE("affine rendering") {
    CHECK(affine_str(AffineForm{make_rational(1, 2), Rational(0)}) == "1/2");
    CHECK(affine_str(AffineForm{Rational(0), Rational(1)}) == "1*x");
    CHECK(affine_str(AffineForm{Rational(1), make_rational(-2, 1)}) == "-2*x + 1");
    CHECK(affine_str(AffineForm{make_rational(-1, 3), Rational(3)}) == "3*x - 1/3");
}

TEST_CASE("double conversion") {
    CHECK(to_double(make_rational(1, 2)) == doctest::Approx(0.5));
    CHECK(to_double(make_rational(-9, 40)) == doctest::Approx(-0.225));
}

}  // TEST_SUITE
