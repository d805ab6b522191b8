#include <doctest.h>

#include <random>

#include "cyclicity/poly2.hpp"
#include "cyclicity/univar.hpp"

using namespace cyc;

namespace {

Poly2 from_terms(std::initializer_list<std::tuple<int, int, long>> terms) {
    Poly2 p;
    for (auto& [i, j, c] : terms) p.set_coeff(i, j, Rational(c));
    return p;
}

} // namespace

TEST_CASE("quasihomogeneous decomposition buckets by weighted degree") {
    // y + x^3 with weight (1,2): parts (2, y) and (3, x^3)
    Poly2 p = from_terms({{0, 1, 1}, {3, 0, 1}});
    auto parts = quasihomogeneous_decompose(p, 2);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == 2);
    CHECK(parts[0].second == from_terms({{0, 1, 1}}));
    CHECK(parts[1].first == 3);
    CHECK(parts[1].second == from_terms({{3, 0, 1}}));

    // (x-y)(x^2+y^2) expanded is homogeneous of degree 3
    Poly2 q = (from_terms({{1, 0, 1}, {0, 1, -1}})) * from_terms({{2, 0, 1}, {0, 2, 1}});
    auto qparts = quasihomogeneous_decompose(q, 1);
    REQUIRE(qparts.size() == 1);
    CHECK(qparts[0].first == 3);

    // x^2 + y has a single part of weighted degree 2 at n = 2
    auto rparts = quasihomogeneous_decompose(from_terms({{2, 0, 1}, {0, 1, 1}}), 2);
    REQUIRE(rparts.size() == 1);
    CHECK(rparts[0].first == 2);

    CHECK(quasihomogeneous_decompose(Poly2{}, 3).empty());
}

TEST_CASE("euler identity for quasihomogeneous polynomials") {
    CHECK(euler_check(from_terms({{4, 0, 1}, {0, 2, 2}}), 2, 4));
    CHECK(euler_check(from_terms({{2, 0, 1}, {0, 2, 1}}), 1, 2));
    CHECK_FALSE(euler_check(from_terms({{1, 0, 1}, {0, 1, 1}}), 2, 1));
    CHECK_FALSE(euler_check(from_terms({{1, 0, 1}, {0, 1, 1}}), 2, 2));
}

TEST_CASE("every decomposition part passes the euler check") {
    std::mt19937 rng(20240517);
    std::uniform_int_distribution<int> expo(0, 5), coef(-6, 6), weight(1, 4);
    for (int trial = 0; trial < 40; ++trial) {
        Poly2 p;
        for (int t = 0; t < 8; ++t)
            p.set_coeff(expo(rng), expo(rng), Rational(coef(rng)));
        int n = weight(rng);
        Poly2 sum;
        for (auto& [w, part] : quasihomogeneous_decompose(p, n)) {
            CHECK(euler_check(part, n, w));
            sum += part;
        }
        CHECK(sum == p);
    }
}

TEST_CASE("linear substitution expands exactly") {
    // p(x,y) = x*y under x -> u+v, y -> u-v gives u^2 - v^2
    Poly2 p = from_terms({{1, 1, 1}});
    Poly2 q = p.subst_linear(Rational(1), Rational(1), Rational(1), Rational(-1));
    CHECK(q == from_terms({{2, 0, 1}, {0, 2, -1}}));
}

TEST_CASE("sturm root counting and isolation") {
    // (t^2+1)(t-2): one real root at 2
    RatPoly p({Rational(-2), Rational(1), Rational(-2), Rational(1)});
    CHECK(sturm_real_root_count(p) == 1);
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(2.0).epsilon(1e-10));

    RatPoly none({Rational(1), Rational(0), Rational(1)}); // t^2+1
    CHECK(sturm_real_root_count(none) == 0);
    CHECK(isolate_real_roots(none).empty());

    // (t-1)^2 (t+3): distinct roots {-3, 1}
    RatPoly sq({Rational(3), Rational(-5), Rational(1), Rational(1)});
    auto r2 = isolate_real_roots(sq);
    REQUIRE(r2.size() == 2);
    CHECK(r2[0] == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(r2[1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("canonical text form") {
    Poly2 p = from_terms({{0, 1, -1}, {3, 0, 1}});
    p.set_coeff(1, 2, Rational(1, 2));
    CHECK(p.str() == "-y + x^3 + 1/2*x*y^2");
    CHECK(Poly2{}.str() == "0");
}
