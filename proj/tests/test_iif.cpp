#include <doctest.h>

#include <cmath>

#include "cyclicity/errors.hpp"
#include "cyclicity/iif.hpp"
#include "cyclicity/presets.hpp"

using namespace cyc;

namespace {
ParsedSystem load(const char* name) {
    const Preset& p = preset(name);
    return parse_system(p.system_text, p.params);
}
IIFCandidate load_v0(const char* name) {
    const Preset& p = preset(name);
    return IIFCandidate::from_text(p.v0_text, p.params);
}
CylinderEquation lift_preset(const char* name) {
    ParsedSystem sys = load(name);
    SingularityClass cls = classify_singularity(sys);
    if (cls.tag == SingularityClass::Tag::Nilpotent)
        return direct_lift(sys, cls.andreev->n, true);
    return polar_lift(sys, cls.d);
}
} // namespace

TEST_CASE("symbolic PDE verification") {
    CHECK(verify_iif_pde(load_v0("ejfd"), load("ejfd"), PdeMode::Symbolic).exact_zero);
    CHECK(verify_iif_pde(load_v0("ejbh"), load("ejbh"), PdeMode::Symbolic).exact_zero);
    CHECK(verify_iif_pde(load_v0("ex5"), load("ex5"), PdeMode::Symbolic).exact_zero);
    // a wrong candidate leaves a nonzero residual
    IIFCandidate wrong = IIFCandidate::from_text("x^2+y^2", {});
    CHECK_FALSE(verify_iif_pde(wrong, load("ejbh"), PdeMode::Symbolic).exact_zero);
}

TEST_CASE("numeric PDE verification of the ex1 factor") {
    PdeReport rep = verify_iif_pde(load_v0("ex1"), load("ex1"), PdeMode::Numeric);
    CHECK_FALSE(rep.symbolic);
    CHECK(rep.max_rel_residual <= 1e-8);
}

TEST_CASE("lifting V0 on the chart divides out the jacobian and angular speed") {
    SUBCASE("ejbh: V = r^3") {
        CylinderEquation cyl = lift_preset("ejbh");
        LiftedIIF lifted = lift_iif(load_v0("ejbh"), cyl);
        VanishingMultiplicity vm = vanishing_multiplicity(lifted);
        CHECK(vm.symbolic);
        CHECK(vm.m == 3);
        for (double r : {0.1, 0.3})
            for (double th : {0.0, 2.1})
                CHECK(lifted.V(r, th) == doctest::Approx(r * r * r).epsilon(1e-12));
        for (double v : vm.vm) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("ejfd with d = 3: V = r") {
        CylinderEquation cyl = lift_preset("ejfd");
        LiftedIIF lifted = lift_iif(load_v0("ejfd"), cyl);
        VanishingMultiplicity vm = vanishing_multiplicity(lifted);
        CHECK(vm.m == 1);
    }
    SUBCASE("ex5: V = r up to a constant") {
        CylinderEquation cyl = lift_preset("ex5");
        LiftedIIF lifted = lift_iif(load_v0("ex5"), cyl);
        VanishingMultiplicity vm = vanishing_multiplicity(lifted);
        CHECK(vm.m == 1);
        double v0 = lifted.V(0.2, 0.4) / 0.2;
        double v1 = lifted.V(0.05, 0.4) / 0.05;
        CHECK(v0 == doctest::Approx(v1).epsilon(1e-9));
    }
}

TEST_CASE("vanishing multiplicity of a constructed Laurent factor") {
    CylinderEquation cyl = lift_preset("ejbh");
    LiftedIIF lifted;
    lifted.cyl = &cyl;
    lifted.symbolic = false;
    lifted.V = [](double r, double) { return (1.0 + r) / r; };
    VanishingMultiplicity vm = vanishing_multiplicity(lifted);
    CHECK(vm.m == -1);
}

TEST_CASE("oscillatory candidates abstain instead of guessing") {
    CylinderEquation cyl = lift_preset("ejbh");
    LiftedIIF lifted;
    lifted.cyl = &cyl;
    lifted.symbolic = false;
    // the non-periodic second factor r^3 sin(2 theta + 1/r^2) has no Laurent
    // leading term
    lifted.V = [](double r, double th) { return r * r * r * std::sin(2 * th + 1.0 / (r * r)); };
    CHECK_THROWS_AS(vanishing_multiplicity(lifted), Undecided);
}

TEST_CASE("Poincare-map identity for lifted factors") {
    SUBCASE("ejbh") {
        CylinderEquation cyl = lift_preset("ejbh");
        LiftedIIF lifted = lift_iif(load_v0("ejbh"), cyl);
        PoincareData prof;
        estimate_multiplicity(cyl, &prof);
        CHECK(check_poincare_identity(lifted, prof) <= 1e-8);
    }
    SUBCASE("ejfd") {
        CylinderEquation cyl = lift_preset("ejfd");
        LiftedIIF lifted = lift_iif(load_v0("ejfd"), cyl);
        PoincareData prof;
        estimate_multiplicity(cyl, &prof);
        CHECK(check_poincare_identity(lifted, prof) <= 1e-10);
    }
}

TEST_CASE("v_m satisfies its first-order relation") {
    SUBCASE("ejbh: v_3 constant") {
        CylinderEquation cyl = lift_preset("ejbh");
        LiftedIIF lifted = lift_iif(load_v0("ejbh"), cyl);
        VanishingMultiplicity vm = vanishing_multiplicity(lifted);
        VmConsistency cons = v_m_consistency(lifted, vm);
        CHECK(cons.max_ode_residual <= 1e-8);
        CHECK(cons.max_closed_form_dev <= 1e-8);
    }
    SUBCASE("ex1: v_3' = -2 F1 v_3 numerically") {
        CylinderEquation cyl = lift_preset("ex1");
        LiftedIIF lifted = lift_iif(load_v0("ex1"), cyl);
        VanishingMultiplicity vm = vanishing_multiplicity(lifted);
        CHECK(vm.m == 3);
        VmConsistency cons = v_m_consistency(lifted, vm);
        CHECK(cons.max_ode_residual <= 1e-5);
        CHECK(cons.max_closed_form_dev <= 1e-5);
    }
}

TEST_CASE("lifted factors are unique up to a constant") {
    CylinderEquation cyl = lift_preset("ejbh");
    LiftedIIF a = lift_iif(load_v0("ejbh"), cyl);
    IIFCandidate scaled = IIFCandidate::from_text("3*(x^2+y^2)^2", {});
    LiftedIIF b = lift_iif(scaled, cyl);
    double ratio0 = 0;
    for (double r : {0.05, 0.1, 0.2, 0.3})
        for (double th : {0.3, 1.1, 2.9, 5.0}) {
            double ratio = b.V(r, th) / a.V(r, th);
            if (ratio0 == 0) ratio0 = ratio;
            CHECK(ratio == doctest::Approx(ratio0).epsilon(1e-6));
        }
}

TEST_CASE("verdicts follow the multiplicity and chart parity") {
    Chart polar3{ChartKind::Polar, 3, true};
    Chart polar1{ChartKind::Polar, 1, true};
    Chart gen3{ChartKind::GenPolar, 3, true};
    Chart gen2{ChartKind::GenPolar, 2, true};

    CyclicityVerdict f = classify_and_bound(3, polar3, 3, false, false);
    CHECK(f.kind == CyclicityVerdict::Kind::Focus);
    CHECK(f.lower_bound == 2);
    CHECK(f.restricted_count == 1);
    CHECK_FALSE(f.exact);

    CyclicityVerdict nd = classify_and_bound(3, polar1, 3, false, true);
    CHECK(nd.kind == CyclicityVerdict::Kind::Focus);
    CHECK(nd.exact);
    CHECK(nd.lower_bound == 1);

    CHECK(classify_and_bound(2, polar3, {}, false, false).kind ==
          CyclicityVerdict::Kind::Center);
    CHECK(classify_and_bound(0, polar3, {}, false, false).kind ==
          CyclicityVerdict::Kind::Center);
    CHECK(classify_and_bound(-1, gen3, {}, false, true).kind ==
          CyclicityVerdict::Kind::Center);
    CHECK(classify_and_bound(2, gen3, {}, false, false).kind ==
          CyclicityVerdict::Kind::Center); // m + n odd

    CyclicityVerdict g = classify_and_bound(1, gen3, 1, false, true);
    CHECK(g.kind == CyclicityVerdict::Kind::Focus);
    CHECK(g.lower_bound == 1);
    CHECK(g.restricted_count == 0);

    // an analytic factor with focus evidence on an even Andreev number is
    // inconsistent
    CHECK(classify_and_bound(2, gen2, 2, false, true).kind ==
          CyclicityVerdict::Kind::Inconsistent);
    // the same data with a non-analytic factor is a valid focus
    CHECK(classify_and_bound(2, gen2, 2, false, false).kind ==
          CyclicityVerdict::Kind::Focus);

    CHECK(classify_and_bound(1, polar1, {}, true, false).kind ==
          CyclicityVerdict::Kind::CenterLike);
    CHECK(classify_and_bound(1, polar1, {}, false, false).kind ==
          CyclicityVerdict::Kind::Abstained);
}

TEST_CASE("a fresh member of the circular family: k = 1, s = 4") {
    // x' = -y(x^2+y^2) + x^5, y' = x(x^2+y^2) + x^4*y; V0 = (x^2+y^2)^3
    ParsedSystem sys = parse_system("x' = -y*(x^2+y^2) + x^5; y' = x*(x^2+y^2) + x^4*y", {});
    SingularityClass cls = classify_singularity(sys);
    CHECK(cls.tag == SingularityClass::Tag::DegenerateNoCharDir);
    CHECK(cls.d == 3);
    CylinderEquation cyl = polar_lift(sys, 3);
    IIFCandidate v0 = IIFCandidate::from_text("(x^2+y^2)^3", {});
    CHECK(verify_iif_pde(v0, sys, PdeMode::Symbolic).exact_zero);
    LiftedIIF lifted = lift_iif(v0, cyl);
    VanishingMultiplicity vm = vanishing_multiplicity(lifted);
    CHECK(vm.m == 3); // r^(s+1-2k)
    PoincareData prof;
    auto [mh, ch] = estimate_multiplicity(cyl, &prof);
    (void)ch;
    CHECK(mh == 3);
    CyclicityVerdict v = classify_and_bound(vm.m, cyl.chart(), mh, false, true);
    CHECK(v.lower_bound == 2); // (m+d)/2 - 1 = s/2
    CHECK(v.restricted_count == 1);
}

TEST_CASE("a Hamiltonian center with a constant factor: m = -5 forces center") {
    ParsedSystem sys = parse_system("x' = -y^5; y' = x^5", {});
    SingularityClass cls = classify_singularity(sys);
    CHECK(cls.tag == SingularityClass::Tag::DegenerateNoCharDir);
    CHECK(cls.d == 5);
    CylinderEquation cyl = polar_lift(sys, 5);
    IIFCandidate v0 = IIFCandidate::from_text("1", {});
    CHECK(verify_iif_pde(v0, sys, PdeMode::Symbolic).exact_zero);
    LiftedIIF lifted = lift_iif(v0, cyl);
    VanishingMultiplicity vm = vanishing_multiplicity(lifted);
    CHECK(vm.m == -5);
    CyclicityVerdict v = classify_and_bound(vm.m, cyl.chart(), {}, false, true);
    CHECK(v.kind == CyclicityVerdict::Kind::Center);
    // and the dynamics agree: the displacement sits below the noise floor
    PoincareData prof;
    estimate_multiplicity(cyl, &prof);
    CHECK(prof.center_like);
}

TEST_CASE("the linear center lifts to the zero chart and reports center-like") {
    ParsedSystem sys = parse_system("x' = -y; y' = x", {});
    SingularityClass cls = classify_singularity(sys);
    CHECK(cls.tag == SingularityClass::Tag::NonDegenerateFocusCandidate);
    CylinderEquation cyl = polar_lift(sys, 1);
    CHECK(cyl.is_zero());
    PoincareData prof;
    estimate_multiplicity(cyl, &prof);
    CHECK(prof.center_like);
}

TEST_CASE("high multiplicity member: s = 6, k = 0 gives m = 7 and exact count 3") {
    ParsedSystem sys = parse_system("x' = -y + x^7; y' = x + x^6*y", {});
    SingularityClass cls = classify_singularity(sys);
    CHECK(cls.tag == SingularityClass::Tag::NonDegenerateFocusCandidate);
    CylinderEquation cyl = polar_lift(sys, 1);
    IIFCandidate v0 = IIFCandidate::from_text("(x^2+y^2)^4", {});
    CHECK(verify_iif_pde(v0, sys, PdeMode::Symbolic).exact_zero);
    LiftedIIF lifted = lift_iif(v0, cyl);
    VanishingMultiplicity vm = vanishing_multiplicity(lifted);
    CHECK(vm.m == 7);
    PoincareData prof;
    auto [mh, ch] = estimate_multiplicity(cyl, &prof);
    (void)ch;
    CHECK(mh == 7);
    CyclicityVerdict v = classify_and_bound(vm.m, cyl.chart(), mh, false, true);
    CHECK(v.kind == CyclicityVerdict::Kind::Focus);
    CHECK(v.exact);
    CHECK(v.restricted_count == 3);
    CHECK(check_poincare_identity(lifted, prof) <= 1e-6);
}
