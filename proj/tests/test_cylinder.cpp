#include <doctest.h>

#include <cmath>

#include "cyclicity/cylinder.hpp"
#include "cyclicity/errors.hpp"
#include "cyclicity/presets.hpp"

using namespace cyc;

namespace {
ParsedSystem load(const char* name) {
    const Preset& p = preset(name);
    return parse_system(p.system_text, p.params);
}

CylinderEquation lift_preset(const char* name) {
    ParsedSystem sys = load(name);
    SingularityClass cls = classify_singularity(sys);
    if (cls.tag == SingularityClass::Tag::Nilpotent)
        return direct_lift(sys, cls.andreev->n, true);
    return polar_lift(sys, cls.d);
}
} // namespace

TEST_CASE("ejbh lifts to dr/dtheta = r^3") {
    CylinderEquation cyl = lift_preset("ejbh");
    CHECK(cyl.period() == doctest::Approx(2 * M_PI));
    CHECK(cyl.lead_power() == 3);
    for (double r : {-0.4, 0.1, 0.7})
        for (double th : {0.0, 0.9, 3.3, 6.0})
            CHECK(cyl.F(r, th) == doctest::Approx(r * r * r).epsilon(1e-12));
}

TEST_CASE("ejfd lifts to dr/dtheta = r") {
    CylinderEquation cyl = lift_preset("ejfd");
    CHECK(cyl.lead_power() == 1);
    for (double r : {-0.4, 0.2})
        for (double th : {0.5, 2.0, 5.5}) CHECK(cyl.F(r, th) == doctest::Approx(r).epsilon(1e-12));
    // F_3(theta) == 1
    for (double th : {0.0, 1.0, 4.0}) CHECK(cyl.theta_lead(th) == doctest::Approx(1.0));
}

TEST_CASE("a saddle refuses the polar lift") {
    ParsedSystem sys = parse_system("x' = x; y' = -y", {});
    CHECK_THROWS_AS(polar_lift(sys, 1), LiftError);
}

TEST_CASE("normalized center gives the zero chart") {
    ParsedSystem sys = parse_system("x' = y; y' = -x^3", {});
    SingularityClass cls = classify_singularity(sys);
    NormalizedSystem ns = normalize_nilpotent(sys, *cls.andreev);
    CylinderEquation cyl = genpolar_lift(ns);
    CHECK(cyl.is_zero());
    for (double th : {0.0, 1.0, 2.0}) CHECK(cyl.F(0.3, th) == 0.0);
}

TEST_CASE("direct lift requires matching quasihomogeneous orders") {
    ParsedSystem bad = parse_system("x' = y; y' = -x", {});
    CHECK_THROWS_AS(direct_lift(bad, 2), LiftError);

    // matching orders a-1 = b-2 = 1
    ParsedSystem good = parse_system("x' = y + x^3; y' = -x^3 + 2*x^2*y", {});
    CylinderEquation cyl = direct_lift(good, 2, true);
    CHECK(cyl.lead_power() == 2);
    CHECK(cyl.orientation_flipped());
}

TEST_CASE("ex5 direct lift matches its closed form") {
    ParsedSystem sys = load("ex5");
    CylinderEquation cyl = direct_lift(sys, 3, true);
    const GenTrigTable& tab = GenTrigTable::get(3);
    double nu1 = 0.1, nu2 = 0.1;
    for (double r : {-0.3, 0.2, 0.45}) {
        for (int k = 0; k < 60; ++k) {
            double th = tab.period() * k / 60;
            auto [cs, sn] = tab.eval(th);
            double zt = 1 + (nu2 + 3 * nu1) * std::pow(cs, 3) * sn;
            double want = r * cs * cs * (-nu1 * std::pow(cs, 6) + nu2 * sn * sn) / zt;
            CHECK(cyl.F(r, th) == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("chart invariants hold on every preset") {
    for (const char* name : {"ejbh", "ejfd", "ex1", "ex2", "ex4", "ex5"}) {
        CAPTURE(name);
        CylinderEquation cyl = lift_preset(name);
        double T = cyl.period();
        int n = cyl.chart().kind == ChartKind::Polar ? 1 : cyl.chart().index;
        double rprobe = std::min(cyl.delta() / 2, 0.4);
        for (int k = 0; k < 64; ++k) {
            double th = T * k / 64;
            CHECK(std::fabs(cyl.F(0.0, th)) <= 1e-12);
            for (double r : {rprobe, -rprobe / 3}) {
                double f = cyl.F(r, th);
                CHECK(std::fabs(cyl.F(r, th + T) - f) <= 1e-10 * std::max(1.0, std::fabs(f)));
                // symmetry inherited from cartesian coordinates
                double phi = ((n + 1) % 2 ? -1.0 : 1.0) * (th + T / 2);
                double sym = cyl.F(-r, phi);
                double want = ((n % 2) ? -1.0 : 1.0) * f;
                CHECK(std::fabs(sym - want) <= 1e-9 * std::max(1.0, std::fabs(f)));
            }
        }
    }
}

TEST_CASE("back-transform returns cartesian points on the right curve") {
    CylinderEquation cyl = lift_preset("ex4");
    auto [x, y] = cyl.to_cartesian(0.3, 0.7);
    // x^(2n) + n y^2 = r^(2n) for n = 2
    CHECK(std::pow(x, 4) + 2 * y * y == doctest::Approx(std::pow(0.3, 4)).epsilon(1e-10));
}
