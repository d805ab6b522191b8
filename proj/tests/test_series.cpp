#include <doctest.h>

#include <random>

#include "cyclicity/errors.hpp"
#include "cyclicity/series.hpp"

using namespace cyc;

TEST_CASE("implicit series solutions of y + P2 = 0") {
    SUBCASE("P2 == 0 gives F == 0") {
        PowerSeries1 F = series_solve_implicit(Poly2{}, 6);
        CHECK(F.is_zero());
    }
    SUBCASE("P2 = x^2 gives F = -x^2") {
        Poly2 p = Poly2::monomial(2, 0, Rational(1));
        PowerSeries1 F = series_solve_implicit(p, 5);
        CHECK(F.coeff(2) == Rational(-1));
        for (int k : {0, 1, 3, 4, 5}) CHECK(F.coeff(k).is_zero());
    }
    SUBCASE("P2 = x*y gives F == 0") {
        Poly2 p = Poly2::monomial(1, 1, Rational(1));
        PowerSeries1 F = series_solve_implicit(p, 5);
        CHECK(F.is_zero());
    }
    SUBCASE("order below 2 is rejected") {
        CHECK_THROWS_AS(series_solve_implicit(Poly2{}, 1), DomainError);
    }
}

TEST_CASE("residual y + P2(x, F(x)) vanishes through the truncation order") {
    std::mt19937 rng(991);
    std::uniform_int_distribution<int> coef(-4, 4);
    const int N = 12;
    for (int trial = 0; trial < 20; ++trial) {
        // random cubic P2 without constant or linear terms
        Poly2 p;
        for (auto [i, j] : {std::pair{2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}})
            p.set_coeff(i, j, Rational(coef(rng)));
        PowerSeries1 F = series_solve_implicit(p, N);
        CHECK(F.coeff(0).is_zero());
        CHECK(F.coeff(1).is_zero());
        PowerSeries1 residual = F + substitute_y(p, F);
        for (int k = 0; k <= N; ++k) CHECK(residual.coeff(k).is_zero());
    }
}

TEST_CASE("series composition requires a zero constant term") {
    PowerSeries1 outer(4);
    outer.set_coeff(0, Rational(1));
    outer.set_coeff(2, Rational(3));
    PowerSeries1 inner(4);
    inner.set_coeff(1, Rational(2));
    PowerSeries1 got = outer.compose(inner); // 1 + 3*(2x)^2
    CHECK(got.coeff(0) == Rational(1));
    CHECK(got.coeff(2) == Rational(12));

    PowerSeries1 bad(4);
    bad.set_coeff(0, Rational(1));
    CHECK_THROWS_AS(outer.compose(bad), DomainError);
}

TEST_CASE("series leading term") {
    PowerSeries1 s(6);
    CHECK_FALSE(s.leading().has_value());
    s.set_coeff(4, Rational(-7));
    auto lead = s.leading();
    REQUIRE(lead.has_value());
    CHECK(lead->first == 4);
    CHECK(lead->second == Rational(-7));
}
