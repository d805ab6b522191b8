#include <doctest.h>

#include "cyclicity/errors.hpp"
#include "cyclicity/rational.hpp"

using cyc::Rational;

TEST_CASE("rational arithmetic stays canonical") {
    Rational a(2, 6);
    CHECK(a.str() == "1/3");
    CHECK((a + Rational(2, 3)).str() == "1");
    CHECK((a * Rational(3)).is_one());
    CHECK((a - a).is_zero());
    CHECK((-a).str() == "-1/3");
    CHECK(Rational(7, -2).str() == "-7/2");
}

TEST_CASE("rational comparisons and powers") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-5) < Rational(0));
    CHECK(Rational(2).pow(10).str() == "1024");
    CHECK(Rational(2, 3).pow(-2).str() == "9/4");
    CHECK(Rational(5, 10) == Rational(1, 2));
    CHECK(Rational(3, 2).is_integer() == false);
    CHECK(Rational(4, 2).to_long() == 2);
}

TEST_CASE("rational parsing") {
    CHECK(Rational::from_string("-4/6").str() == "-2/3");
    CHECK(Rational::from_string("17").to_long() == 17);
    CHECK_THROWS_AS(Rational::from_string("1/0"), cyc::ParseError);
    CHECK_THROWS_AS(Rational::from_string("abc"), cyc::ParseError);
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), cyc::DomainError);
}

TEST_CASE("double conversion") {
    CHECK(Rational(1, 2).to_double() == 0.5);
    CHECK(Rational(1, 10).to_double() == doctest::Approx(0.1));
}
