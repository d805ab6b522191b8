#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cyclicity/bifurcation.hpp"
#include "cyclicity/errors.hpp"
#include "cyclicity/presets.hpp"

using namespace cyc;

namespace {
ParsedSystem load(const char* name) {
    const Preset& p = preset(name);
    return parse_system(p.system_text, p.params);
}
} // namespace

TEST_CASE("the explicit cubic perturbation carries its invariant circle") {
    PerturbationFamily fam = build_family(FamilyTag::PresetEx3, load("ejfd"), 1);
    auto hits = count_limit_cycles(fam, 0.01, 0.5);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].hyperbolic);
    CHECK(std::fabs(hits[0].r - 0.1) <= 1e-6);
    CHECK(hits[0].partner_seen);

    // eps = 0: the unperturbed focus has no cycles
    CHECK(count_limit_cycles(fam, 0.0, 0.5).empty());
}

TEST_CASE("k = 0 takes no perturbation terms") {
    PerturbationFamily fam = build_family(FamilyTag::DegP1, load("ejfd"), 1);
    CHECK(fam.k_or_L == 0);
    auto [P, Q] = fam.at(0.01);
    CHECK(P.terms() == fam.Pbase.terms());
    CHECK(Q.terms() == fam.Qbase.terms());
    CHECK(count_limit_cycles(fam, 0.01, 0.5).empty());
}

TEST_CASE("a subdegree-1 term reverses the stability and births one cycle") {
    // b0 chosen against the repelling origin of the base
    PerturbationFamily fam = build_family(FamilyTag::DegP2, load("ejfd"), 1, {-1.0});
    CHECK(fam.k_or_L == 1);
    for (double eps : {1e-2, 1e-3}) {
        auto hits = count_limit_cycles(fam, eps, 0.5);
        REQUIRE(hits.size() == 1);
        double want = std::sqrt(eps); // r*^2 = -eps*b0
        CHECK(hits[0].r == doctest::Approx(want).epsilon(1e-6));
        CHECK(hits[0].hyperbolic);
    }
    // with the same sign as the instability no small cycle appears
    PerturbationFamily none = build_family(FamilyTag::DegP2, load("ejfd"), 1, {1.0});
    CHECK(count_limit_cycles(none, 1e-3, 0.5).empty());
}

TEST_CASE("parity mismatches are rejected") {
    CHECK_THROWS_AS(build_family(FamilyTag::DegP1, load("ejfd"), 2), DomainError);
    ParsedSystem ex5 = load("ex5");
    SingularityClass cls = classify_singularity(ex5);
    NormalizedSystem ns = normalize_nilpotent(ex5, *cls.andreev);
    CHECK_THROWS_AS(build_family_nilpotent(FamilyTag::NilP1, ns, 2), DomainError);
    CHECK_NOTHROW(build_family_nilpotent(FamilyTag::NilP1, ns, 1));
}

TEST_CASE("sweep counts stay within the theorem bound and vary continuously") {
    PerturbationFamily fam = build_family(FamilyTag::PresetEx3, load("ejfd"), 1);
    auto rows = sweep(fam, {1e-2, 1e-3, 1e-4}, 0.5);
    REQUIRE(rows.size() == 3);
    for (auto& row : rows) {
        CHECK(row.count == 1);
        CHECK_FALSE(row.exceeded_bound);
        REQUIRE(row.radii.size() == 1);
    }
    CHECK(rows[0].radii[0] > rows[1].radii[0]);
    CHECK(rows[1].radii[0] > rows[2].radii[0]);
    for (size_t i = 0; i < rows.size(); ++i)
        CHECK(rows[i].radii[0] == doctest::Approx(std::sqrt(rows[i].eps)).epsilon(1e-4));

    std::ostringstream os;
    write_sweep_csv(rows, os);
    CHECK(os.str().substr(0, 22) == "eps,cycle_count,radii\n");
}

TEST_CASE("nilpotent family multiplier shapes") {
    ParsedSystem ex5 = load("ex5");
    SingularityClass cls = classify_singularity(ex5);
    NormalizedSystem ns = normalize_nilpotent(ex5, *cls.andreev);
    // m = 3 with n = 3 gives one NilP1 term a_0 x^(n-1) = x^2
    PerturbationFamily fam = build_family_nilpotent(FamilyTag::NilP1, ns, 3);
    CHECK(fam.k_or_L == 1);
    auto [P, Q] = fam.at(0.5);
    // x * K adds 0.5 * x^3; n y K adds 3 * 0.5 * x^2 y
    CHECK(P.coeff(3, 0) == doctest::Approx(ns.P.coeff(3, 0) + 0.5));
    CHECK(Q.coeff(2, 1) == doctest::Approx(ns.Q.coeff(2, 1) + 1.5));
}

TEST_CASE("the coefficient search attains the restricted bound on ejbh") {
    // base m = 3 on the non-degenerate chart: k = 1 cycle attainable
    PerturbationFamily fam = build_family(FamilyTag::DegP1, load("ejbh"), 3);
    CHECK(fam.k_or_L == 1);
    CHECK(count_limit_cycles(fam, 1e-3, 0.4).empty()); // default a_0 = +1 pushes outward
    PerturbationFamily tuned = search_coefficients(fam, 1e-3, 0.4);
    auto hits = count_limit_cycles(tuned, 1e-3, 0.4);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].r == doctest::Approx(std::sqrt(1e-3)).epsilon(1e-6));
    CHECK(hits[0].hyperbolic);
}
