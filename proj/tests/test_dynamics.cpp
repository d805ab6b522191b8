#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cyclicity/dynamics.hpp"
#include "cyclicity/errors.hpp"
#include "cyclicity/presets.hpp"

using namespace cyc;

namespace {
CylinderEquation lift_preset(const char* name) {
    const Preset& p = preset(name);
    ParsedSystem sys = parse_system(p.system_text, p.params);
    SingularityClass cls = classify_singularity(sys);
    if (cls.tag == SingularityClass::Tag::Nilpotent)
        return direct_lift(sys, cls.andreev->n, true);
    return polar_lift(sys, cls.d);
}
} // namespace

TEST_CASE("ejbh Poincare map against the separable closed form") {
    CylinderEquation cyl = lift_preset("ejbh");
    for (double r0 : {0.05, 0.1, 0.2}) {
        PoincareResult p = poincare_map(cyl, r0);
        double closed = r0 / std::sqrt(1 - 4 * M_PI * r0 * r0);
        double dclosed = std::pow(1 - 4 * M_PI * r0 * r0, -1.5);
        CHECK(p.pi == doctest::Approx(closed).epsilon(1e-9));
        CHECK(p.dpi == doctest::Approx(dclosed).epsilon(1e-8));
    }
    // variational derivative against finite differences
    double h = 1e-5, r0 = 0.1;
    PoincareResult p = poincare_map(cyl, r0);
    double fd = (poincare_map(cyl, r0 + h).pi - poincare_map(cyl, r0 - h).pi) / (2 * h);
    CHECK(p.dpi == doctest::Approx(fd).epsilon(1e-5));
}

TEST_CASE("ejfd linear chart and its invariant-circle derivative") {
    CylinderEquation cyl = lift_preset("ejfd");
    PoincareResult p = poincare_map(cyl, 0.05);
    CHECK(p.pi == doctest::Approx(std::exp(2 * M_PI) * 0.05).epsilon(1e-7));
    PoincareResult z = poincare_map(cyl, 0.0);
    CHECK(z.pi == 0.0);
    CHECK(z.dpi == doctest::Approx(std::exp(2 * M_PI)).epsilon(1e-9));
}

TEST_CASE("window exits are reported") {
    CylinderEquation cyl = lift_preset("ejbh"); // blow-up past r0 ~ 0.28
    CHECK_THROWS_AS(poincare_map(cyl, 0.5), WindowExit);
}

TEST_CASE("displacement profiles and multiplicity estimates") {
    SUBCASE("ejfd: m = 1 with c = e^(2pi) - 1") {
        CylinderEquation cyl = lift_preset("ejfd");
        PoincareData prof;
        auto [m, c] = estimate_multiplicity(cyl, &prof);
        CHECK(m == 1);
        CHECK(c == doctest::Approx(std::exp(2 * M_PI) - 1).epsilon(1e-6));
        CHECK(prof.sign_pos == '+');
    }
    SUBCASE("ejbh: m = 3 with c near 2pi") {
        CylinderEquation cyl = lift_preset("ejbh");
        PoincareData prof;
        auto [m, c] = estimate_multiplicity(cyl, &prof);
        CHECK(m == 3);
        CHECK(c == doctest::Approx(2 * M_PI).epsilon(0.01));
    }
    SUBCASE("center chart: displacement identically zero") {
        ParsedSystem sys = parse_system("x' = y; y' = -x^3", {});
        SingularityClass cls = classify_singularity(sys);
        NormalizedSystem ns = normalize_nilpotent(sys, *cls.andreev);
        CylinderEquation cyl = genpolar_lift(ns);
        PoincareData prof = displacement_profile(cyl, 1e-3, 0.3, 10);
        for (double d : prof.d) CHECK(std::fabs(d) <= 1e-11);
        PoincareData est;
        estimate_multiplicity(cyl, &est);
        CHECK(est.center_like);
    }
    SUBCASE("ex4: semistable signature, d > 0 on both sides") {
        CylinderEquation cyl = lift_preset("ex4");
        PoincareData prof;
        auto [m, c] = estimate_multiplicity(cyl, &prof);
        (void)c;
        CHECK(m == 2);
        CHECK(prof.sign_pos == '+');
        CHECK(prof.sign_neg == '+');
    }
}

TEST_CASE("characteristic exponents") {
    CHECK(characteristic_exponent(lift_preset("ejfd")) == doctest::Approx(2 * M_PI).epsilon(1e-8));
    CHECK(std::fabs(characteristic_exponent(lift_preset("ejbh"))) <= 1e-9);
    CHECK(std::fabs(characteristic_exponent(lift_preset("ex1"))) <= 1e-6);
}

TEST_CASE("profile CSV has the pinned column order") {
    CylinderEquation cyl = lift_preset("ejfd");
    PoincareData prof = displacement_profile(cyl, 1e-3, 2e-3, 2);
    std::ostringstream os;
    write_profile_csv(prof, os);
    CHECK(os.str().substr(0, 12) == "r0,Pi,dPi,d\n");
}
