#include "cyclicity/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "cyclicity/bifurcation.hpp"
#include "cyclicity/config.hpp"
#include "cyclicity/cylinder.hpp"
#include "cyclicity/dynamics.hpp"
#include "cyclicity/errors.hpp"
#include "cyclicity/gentrig.hpp"
#include "cyclicity/iif.hpp"
#include "cyclicity/monodromy.hpp"
#include "cyclicity/presets.hpp"
#include "cyclicity/report.hpp"

namespace cyc {

namespace {

struct Check {
    bool ok = true;
    std::string first_failure;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    }
    void near(double got, double want, double tol, const std::string& what) {
        std::ostringstream os;
        os << what << ": got " << got << ", want " << want << " (tol " << tol << ")";
        expect(std::fabs(got - want) <= tol, os.str());
    }
};

ParsedSystem load(const std::string& name) {
    const Preset& p = preset(name);
    return parse_system(p.system_text, p.params);
}

IIFCandidate load_v0(const std::string& name) {
    const Preset& p = preset(name);
    return IIFCandidate::from_text(p.v0_text, p.params);
}

// ---- criterion bodies ------------------------------------------------

void crit_gentrig(Check& c) {
    for (int n = 1; n <= 5; ++n) {
        const GenTrigTable& tab = GenTrigTable::get(n);
        double T = tab.period();
        c.near(tab.return_time(), T, 1e-9, "n=" + std::to_string(n) + " period cross-check");
        const int G = 1000;
        for (int i = 0; i < G; ++i) {
            double th = T * i / G;
            auto [cs, sn] = tab.eval(th);
            double fund = std::pow(cs, 2 * n) + n * sn * sn - 1.0;
            c.expect(std::fabs(fund) <= 1e-10, "fundamental relation at n=" + std::to_string(n));
            auto [cm, sm] = tab.eval(-th);
            c.expect(std::fabs(cm - cs) <= 1e-10 && std::fabs(sm + sn) <= 1e-10,
                     "reflection symmetry at n=" + std::to_string(n));
            auto [ch, sh] = tab.eval(th + T / 2);
            c.expect(std::fabs(ch + cs) <= 1e-10 && std::fabs(sh + sn) <= 1e-10,
                     "half-period symmetry at n=" + std::to_string(n));
            // Cs phi = -Cs, Sn phi = (-1)^n Sn at phi = (-1)^(n+1) (th + T/2)
            double phi = ((n + 1) % 2 ? -1.0 : 1.0) * (th + T / 2);
            auto [cp, sp] = tab.eval(phi);
            double snsign = (n % 2) ? -1.0 : 1.0;
            c.expect(std::fabs(cp + cs) <= 1e-10 && std::fabs(sp - snsign * sn) <= 1e-10,
                     "reflected-shift symmetry at n=" + std::to_string(n));
            // quasihomogeneous sign law for R = x^2 (w=2) and R = x*y (w=n+1)
            double lhs1 = cp * cp, rhs1 = cs * cs;
            c.expect(std::fabs(lhs1 - rhs1) <= 1e-9, "sign law w=2");
            double lhs2 = cp * sp, rhs2 = ((n + 1) % 2 ? -1.0 : 1.0) * cs * sn;
            c.expect(std::fabs(lhs2 - rhs2) <= 1e-9, "sign law w=n+1");
        }
        if (n == 1) {
            c.near(T, 2 * M_PI, 1e-12, "classical period");
            for (int i = 0; i < G; ++i) {
                double th = 2 * M_PI * i / G;
                auto [cs, sn] = tab.eval(th);
                c.expect(std::fabs(cs - std::cos(th)) <= 1e-12 &&
                             std::fabs(sn - std::sin(th)) <= 1e-12,
                         "n=1 matches classical trig");
            }
        }
        if (n == 2) {
            auto [cs, sn] = tab.eval(T / 2);
            c.expect(std::fabs(cs + 1) <= 1e-10 && std::fabs(sn) <= 1e-10, "Cs(T2/2) = -1");
        }
        auto [c0, s0] = tab.eval(0.0);
        c.expect(std::fabs(c0 - 1) <= 1e-12 && std::fabs(s0) <= 1e-12, "initial condition");
    }
}

void crit_ejbh(Check& c) {
    ParsedSystem sys = load("ejbh");
    SingularityClass cls = classify_singularity(sys);
    c.expect(cls.tag == SingularityClass::Tag::NonDegenerateFocusCandidate, "ejbh class");
    CylinderEquation cyl = polar_lift(sys, 1);

    double r0 = 0.1;
    PoincareResult pr = poincare_map(cyl, r0);
    double closed = r0 / std::sqrt(1.0 - 4 * M_PI * r0 * r0);
    c.near(pr.pi, closed, 1e-7, "Pi(0.1) closed form");

    PoincareData prof;
    auto [mh, ch] = estimate_multiplicity(cyl, &prof);
    c.expect(mh == 3, "ejbh multiplicity estimate");
    c.near(ch, 2 * M_PI, 0.01 * 2 * M_PI, "ejbh leading coefficient");

    IIFCandidate v0 = load_v0("ejbh");
    LiftedIIF lifted = lift_iif(v0, cyl);
    VanishingMultiplicity vm = vanishing_multiplicity(lifted);
    c.expect(vm.m == 3 && vm.symbolic, "ejbh vanishing multiplicity");
    for (double v : vm.vm) c.near(v, 1.0, 1e-9, "v_3 == 1");
    double ident = check_poincare_identity(lifted, prof);
    c.expect(ident <= 1e-8, "Poincare identity residual " + std::to_string(ident));
}

void crit_ejfd(Check& c) {
    ParsedSystem sys = load("ejfd");
    SingularityClass cls = classify_singularity(sys);
    c.expect(cls.tag == SingularityClass::Tag::DegenerateNoCharDir && cls.d == 3, "ejfd class");
    CylinderEquation cyl = polar_lift(sys, 3);

    IIFCandidate v0 = load_v0("ejfd");
    LiftedIIF lifted = lift_iif(v0, cyl);
    VanishingMultiplicity vm = vanishing_multiplicity(lifted);
    c.expect(vm.m == 1, "ejfd m == 1");

    double chi = characteristic_exponent(cyl);
    c.near(chi, 2 * M_PI, 1e-6, "ejfd characteristic exponent");

    PoincareData prof;
    auto [mh, ch] = estimate_multiplicity(cyl, &prof);
    (void)ch;
    c.expect(mh == 1, "ejfd dynamic multiplicity");
    CyclicityVerdict v = classify_and_bound(vm.m, cyl.chart(), mh, false, true);
    c.expect(v.kind == CyclicityVerdict::Kind::Focus, "ejfd focus verdict");
    c.expect(v.lower_bound == 1, "ejfd bound (1+3)/2-1");
    c.expect(v.restricted_count == 0, "ejfd restricted count");

    PerturbationFamily fam = build_family(FamilyTag::PresetEx3, sys, 1);
    for (double eps : {1e-2, 1e-3}) {
        auto hits = count_limit_cycles(fam, eps, 0.5);
        c.expect(hits.size() == 1, "one cycle at eps=" + std::to_string(eps));
        if (hits.size() == 1) {
            c.expect(hits[0].hyperbolic, "cycle hyperbolic");
            double want = std::sqrt(eps);
            c.expect(std::fabs(hits[0].r - want) / want <= 1e-4,
                     "cycle radius sqrt(eps), got " + std::to_string(hits[0].r));
        }
    }
}

void crit_ex1(Check& c) {
    ParsedSystem sys = load("ex1");
    SingularityClass cls = classify_singularity(sys);
    c.expect(cls.tag == SingularityClass::Tag::DegenerateNoCharDir && cls.d == 3, "ex1 class");
    IIFCandidate v0 = load_v0("ex1");
    PdeReport pde = verify_iif_pde(v0, sys, PdeMode::Numeric);
    c.expect(pde.max_rel_residual <= 1e-8,
             "ex1 PDE residual " + std::to_string(pde.max_rel_residual));

    CylinderEquation cyl = polar_lift(sys, 3);
    LiftedIIF lifted = lift_iif(v0, cyl);
    VanishingMultiplicity vm = vanishing_multiplicity(lifted);
    c.expect(vm.m == 3, "ex1 m == 3");
    double mu = 0.5;
    for (size_t i = 0; i < vm.theta.size(); ++i) {
        double want = std::exp(-2 * mu * std::pow(std::cos(vm.theta[i]), 2));
        c.near(vm.vm[i], want, 1e-5, "ex1 v_3(theta)");
    }

    PoincareData prof;
    auto [mh, ch] = estimate_multiplicity(cyl, &prof);
    (void)ch;
    CyclicityVerdict v = classify_and_bound(vm.m, cyl.chart(), mh, false, false);
    c.expect(v.kind == CyclicityVerdict::Kind::Focus, "ex1 focus verdict");
    c.expect(v.lower_bound == 2, "ex1 bound >= 2");
    c.expect(v.restricted_count == 1, "ex1 restricted count 1");
}

void crit_ex4(Check& c) {
    ParsedSystem sys = load("ex4");
    SingularityClass cls = classify_singularity(sys);
    c.expect(cls.tag == SingularityClass::Tag::Nilpotent, "ex4 nilpotent");
    c.expect(cls.andreev && cls.andreev->n == 2, "ex4 Andreev number 2");

    CylinderEquation cyl = direct_lift(sys, 2, true);
    const GenTrigTable& tab = GenTrigTable::get(2);
    for (int i = 0; i <= 8; ++i) {
        double r = (i / 8.0 - 0.5) * cyl.delta(); // both signs
        if (std::fabs(r) < 1e-3) continue;
        for (int k = 0; k < 100; ++k) {
            double th = tab.period() * k / 100;
            auto [cs, sn] = tab.eval(th);
            (void)sn;
            c.near(cyl.F(r, th), r * r * cs * cs, 1e-9, "ex4 closed-form lift");
        }
    }

    PoincareData prof;
    auto [mh, ch] = estimate_multiplicity(cyl, &prof);
    (void)ch;
    c.expect(mh == 2, "ex4 dynamic multiplicity 2");
    c.expect(prof.sign_pos == '+' && prof.sign_neg == '+', "ex4 semistable sign pattern");

    IIFCandidate v0 = load_v0("ex4");
    LiftedIIF lifted = lift_iif(v0, cyl);
    VanishingMultiplicity vm = vanishing_multiplicity(lifted);
    c.expect(vm.m == 2, "ex4 m == 2");
    CyclicityVerdict v = classify_and_bound(vm.m, cyl.chart(), mh, false, v0.poly.has_value());
    c.expect(v.kind != CyclicityVerdict::Kind::Center, "ex4 no center verdict");
    c.expect(v.kind == CyclicityVerdict::Kind::Focus && v.lower_bound == 1 &&
                 v.restricted_count == 0,
             "ex4 focus bounds");
}

void crit_ex5(Check& c) {
    const Preset& p = preset("ex5");
    Rational nu1 = p.params.at("nu1"), nu2 = p.params.at("nu2");
    c.expect((nu1 * nu2 - Rational(1)).sign() < 0, "ex5 inequality nu1*nu2 - 1 < 0");
    Rational s = nu2 + Rational(3) * nu1;
    c.expect((s * s - Rational(12)).sign() < 0, "ex5 inequality (nu2+3nu1)^2 - 12 < 0");

    ParsedSystem sys = load("ex5");
    SingularityClass cls = classify_singularity(sys);
    c.expect(cls.tag == SingularityClass::Tag::Nilpotent && cls.andreev && cls.andreev->n == 3,
             "ex5 Andreev number 3");

    IIFCandidate v0 = load_v0("ex5");
    PdeReport pde = verify_iif_pde(v0, sys, PdeMode::Symbolic);
    c.expect(pde.symbolic && pde.exact_zero, "ex5 symbolic PDE check");

    CylinderEquation cyl = direct_lift(sys, 3, true);
    LiftedIIF lifted = lift_iif(v0, cyl);
    VanishingMultiplicity vm = vanishing_multiplicity(lifted);
    c.expect(vm.m == 1, "ex5 m == 1");

    // focus sample: one-signed displacement
    PoincareData prof;
    estimate_multiplicity(cyl, &prof);
    c.expect(!prof.center_like, "ex5 focus sample not center-like");
    bool one_signed = prof.sign_pos != '0';
    const Config& cfg = Config::get();
    for (size_t i = 0; i < prof.r0.size(); ++i) {
        if (prof.r0[i] <= 0) continue;
        if (std::fabs(prof.d[i]) <= 10 * (cfg.ode_abs + cfg.ode_rel * prof.r0[i])) continue;
        one_signed = one_signed && ((prof.d[i] > 0) == (prof.sign_pos == '+'));
    }
    c.expect(one_signed, "ex5 displacement one-signed");

    // center sample: nu2 = 3*nu1
    Bindings center_params{{"nu1", Rational(1, 10)}, {"nu2", Rational(3, 10)}};
    ParsedSystem sysc = parse_system(p.system_text, center_params);
    CylinderEquation cylc = direct_lift(sysc, 3, true);
    PoincareData profc;
    estimate_multiplicity(cylc, &profc);
    c.expect(profc.center_like, "ex5 center sample displacement below the noise floor");

    // restricted perturbations: m = 1 gives k = 0, no cycles for small eps
    NormalizedSystem ns = normalize_nilpotent(sys, *cls.andreev);
    PerturbationFamily fam = build_family_nilpotent(FamilyTag::NilP1, ns, vm.m);
    c.expect(fam.k_or_L == 0, "ex5 k == 0 convention");
    auto rows = sweep(fam, {1e-2, 1e-3, 1e-4}, 0.3);
    for (auto& row : rows)
        c.expect(row.count == 0, "ex5 no cycles at eps=" + std::to_string(row.eps));
}

struct PresetRun {
    std::string name;
    CylinderEquation cyl;
    int m_hat;
    PoincareData prof;
    int m_iif;
    double vm_ode_residual;
};

std::vector<PresetRun> run_all_presets() {
    std::vector<PresetRun> out;
    for (const char* name : {"ejbh", "ejfd", "ex1", "ex2", "ex4", "ex5"}) {
        ParsedSystem sys = load(name);
        SingularityClass cls = classify_singularity(sys);
        CylinderEquation cyl = cls.tag == SingularityClass::Tag::Nilpotent
                                   ? direct_lift(sys, cls.andreev->n, true)
                                   : polar_lift(sys, cls.d);
        PoincareData prof;
        auto [mh, ch] = estimate_multiplicity(cyl, &prof);
        (void)ch;
        IIFCandidate v0 = load_v0(name);
        LiftedIIF lifted = lift_iif(v0, cyl);
        VanishingMultiplicity vm = vanishing_multiplicity(lifted);
        VmConsistency cons = v_m_consistency(lifted, vm);
        out.push_back({name, std::move(cyl), mh, std::move(prof), vm.m, cons.max_ode_residual});
    }
    return out;
}

void crit_parity(Check& c, const std::vector<PresetRun>& runs) {
    for (auto& run : runs) {
        if (run.cyl.chart().kind == ChartKind::Polar) {
            c.expect(run.m_hat % 2 == 1, run.name + ": polar multiplicity odd");
        } else {
            c.expect((run.m_hat - run.cyl.chart().index) % 2 == 0,
                     run.name + ": genpolar multiplicity parity");
        }
        double chi = characteristic_exponent(run.cyl);
        c.expect(run.m_hat == 1 || std::fabs(chi) <= 1e-6,
                 run.name + ": m=1 or zero characteristic exponent, chi=" + std::to_string(chi));
    }
    // symmetric partners for every detected cycle
    ParsedSystem sys = load("ejfd");
    PerturbationFamily fam = build_family(FamilyTag::PresetEx3, sys, 1);
    for (double eps : {1e-2, 1e-3}) {
        auto hits = count_limit_cycles(fam, eps, 0.5);
        for (auto& h : hits) c.expect(h.partner_seen, "symmetric partner detected");
    }
}

void crit_cross(Check& c, const std::vector<PresetRun>& runs) {
    for (auto& run : runs) {
        c.expect(run.m_iif == run.m_hat,
                 run.name + ": vanishing multiplicity " + std::to_string(run.m_iif) +
                     " equals dynamic estimate " + std::to_string(run.m_hat));
        c.expect(run.vm_ode_residual <= 1e-5,
                 run.name + ": v_m ODE residual " + std::to_string(run.vm_ode_residual));
    }
}

void crit_determinism(Check& c) {
    for (auto& p : presets()) {
        ParsedSystem sys = parse_system(p.system_text, p.params);
        ParsedSystem again = parse_system(sys.str(), p.params);
        c.expect(sys.polynomial() == again.polynomial(), p.name + ": round-trip shape");
        if (sys.polynomial() && again.polynomial())
            c.expect(*sys.P == *again.P && *sys.Q == *again.Q,
                     p.name + ": parse-print round trip");
        if (!p.v0_text.empty()) {
            ParsedExpression e1 = parse_expression(p.v0_text);
            ParsedExpression e2 = parse_expression(print_expr(e1.ast));
            c.expect(expr_equal(e1.ast, e2.ast), p.name + ": V0 round trip");
        }
    }
    ParsedSystem sys = load("ejbh");
    IIFCandidate v0 = load_v0("ejbh");
    AnalysisOutcome a = analyze_system(sys, v0);
    AnalysisOutcome b = analyze_system(sys, v0);
    c.expect(a.report.dump() == b.report.dump(), "byte-identical reports");
    c.expect(a.exit_code == 0, "ejbh analyze exit code");
}

} // namespace

std::vector<CriterionResult> run_acceptance() {
    struct Item {
        int id;
        const char* name;
        double budget;
        std::function<void(Check&)> body;
    };

    std::vector<PresetRun> runs;
    bool runs_ready = false;
    auto ensure_runs = [&]() {
        if (!runs_ready) {
            runs = run_all_presets();
            runs_ready = true;
        }
    };

    std::vector<Item> items = {
        {1, "generalized trigonometric suite", 2.0, crit_gentrig},
        {2, "ejbh closed-form oracle", 5.0, crit_ejbh},
        {3, "ejfd multiplicity, verdict, and bifurcation", 10.0, crit_ejfd},
        {4, "ex1 non-analytic factor", 10.0, crit_ex1},
        {5, "ex4 nilpotent semistable point", 10.0, crit_ex4},
        {6, "ex5 quasihomogeneous family", 15.0, crit_ex5},
        {7, "parity and symmetry properties", 30.0,
         [&](Check& c) {
             ensure_runs();
             crit_parity(c, runs);
         }},
        {8, "cross-module multiplicity agreement", 30.0,
         [&](Check& c) {
             ensure_runs();
             crit_cross(c, runs);
         }},
        {9, "parser and report determinism", 30.0, crit_determinism},
    };

    std::vector<CriterionResult> results;
    for (auto& item : items) {
        Check c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            item.body(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > item.budget)
            c.expect(false, "runtime " + std::to_string(secs) + "s over budget " +
                                std::to_string(item.budget) + "s");
        results.push_back({item.id, item.name, c.ok, secs, c.first_failure});
    }
    return results;
}

bool print_acceptance(std::ostream& os) {
    auto results = run_acceptance();
    bool all = true;
    char buf[64];
    for (auto& r : results) {
        std::snprintf(buf, sizeof buf, " (%.2fs)", r.seconds);
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << buf;
        if (!r.pass) os << " -- " << r.detail;
        os << "\n";
        all = all && r.pass;
    }
    os << (all ? "acceptance: all criteria passed\n" : "acceptance: FAILURES present\n");
    return all;
}

} // namespace cyc
