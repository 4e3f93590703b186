#include <doctest.h>

#include "statsolve/rational.hpp"

using statsolve::Rational;

TEST_CASE("rationals normalize and reduce") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4) == Rational(1, -2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(6, 3).is_integer());
    CHECK(Rational(6, 3).num() == 2);
    CHECK(Rational(3, -6).den() == 2);
    CHECK(Rational(3, -6).num() == -1);
}

TEST_CASE("arithmetic is exact") {
    const Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));

    Rational sum(0);
    for (int i = 0; i < 63; ++i) sum += Rational(1, 63);
    CHECK(sum == Rational(1));
}

TEST_CASE("comparisons use cross multiplication") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(7, 3) > Rational(2));
    CHECK(Rational(2, 6) <= Rational(1, 3));
    CHECK(Rational(2, 6) >= Rational(1, 3));
}

TEST_CASE("floor and ceil") {
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(7, 2).ceil() == 4);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(4).ceil() == 4);
}

TEST_CASE("parse and format round-trip") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-3/4") == Rational(-3, 4));
    CHECK(Rational::parse("12") == Rational(12));
    CHECK(Rational::parse("6/4").str() == "3/2");
    CHECK(Rational(5).str() == "5");
    CHECK(Rational(-1, 2).str() == "-1/2");

    CHECK_THROWS_AS(Rational::parse("1/0"), statsolve::RationalParseError);
    CHECK_THROWS_AS(Rational::parse(""), statsolve::RationalParseError);
    CHECK_THROWS_AS(Rational::parse("a/2"), statsolve::RationalParseError);
    CHECK_THROWS_AS(Rational::parse("1/"), statsolve::RationalParseError);
}

TEST_CASE("division by zero and zero denominators throw") {
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("overflow is detected, not wrapped") {
    const Rational big(std::numeric_limits<std::int64_t>::max());
    CHECK_THROWS_AS(big * big, statsolve::RationalOverflow);
}
