#include "cyclicity/report.hpp"

#include <cmath>

#include "cyclicity/config.hpp"
#include "cyclicity/errors.hpp"
#include "cyclicity/version.hpp"

namespace cyc {

namespace {

Json andreev_json(const MonodromyReport& r) {
    Json j = Json::object();
    j.set("monodromic", r.monodromic);
    j.set("n", r.n);
    j.set("a", r.a.str());
    j.set("alpha", r.alpha);
    if (r.b)
        j.set("b", r.b->str());
    else
        j.set("b", Json());
    if (r.beta)
        j.set("beta", *r.beta);
    else
        j.set("beta", Json());
    j.set("case", r.monodromy_case);
    j.set("xi", r.xi);
    j.set("truncation_order", r.trunc_order);
    j.set("note", r.note);
    return j;
}

const char* tag_name(SingularityClass::Tag t) {
    switch (t) {
    case SingularityClass::Tag::NonDegenerateFocusCandidate: return "non-degenerate-focus-candidate";
    case SingularityClass::Tag::DegenerateNoCharDir: return "degenerate-no-characteristic-directions";
    case SingularityClass::Tag::Nilpotent: return "nilpotent";
    case SingularityClass::Tag::NotMonodromicOrUnknown: return "not-monodromic-or-unknown";
    }
    return "?";
}

const char* verdict_name(CyclicityVerdict::Kind k) {
    switch (k) {
    case CyclicityVerdict::Kind::Center: return "center";
    case CyclicityVerdict::Kind::Focus: return "focus";
    case CyclicityVerdict::Kind::CenterLike: return "center-like";
    case CyclicityVerdict::Kind::Abstained: return "abstained";
    case CyclicityVerdict::Kind::Inconsistent: return "inconsistent";
    }
    return "?";
}

} // namespace

Json error_report(const std::string& kind, const std::string& message, long offset) {
    Json err = Json::object();
    err.set("kind", kind);
    err.set("message", message);
    if (offset >= 0) err.set("offset", offset);
    Json j = Json::object();
    Json tool = Json::object();
    tool.set("name", kToolName);
    tool.set("version", kToolVersion);
    j.set("tool", std::move(tool));
    j.set("error", std::move(err));
    return j;
}

AnalysisOutcome analyze_system(const ParsedSystem& sys, const std::optional<IIFCandidate>& v0,
                               const AnalyzeOptions& opts) {
    const Config& cfg = Config::get();
    AnalysisOutcome out;
    Json& j = out.report;

    {
        Json tool = Json::object();
        tool.set("name", kToolName);
        tool.set("version", kToolVersion);
        j.set("tool", std::move(tool));
        Json tol = Json::object();
        tol.set("ode_abs", cfg.ode_abs);
        tol.set("ode_rel", cfg.ode_rel);
        tol.set("gentrig", cfg.gentrig_tol);
        j.set("tolerances", std::move(tol));
        Json in = Json::object();
        in.set("system", sys.str());
        Json params = Json::object();
        for (auto& [k, v] : sys.params) params.set(k, v.str());
        in.set("params", std::move(params));
        in.set("iif", v0 ? Json(print_expr(v0->ast)) : Json());
        j.set("input", std::move(in));
    }

    SingularityClass cls = classify_singularity(sys);
    {
        Json c = Json::object();
        c.set("tag", tag_name(cls.tag));
        c.set("d", cls.d);
        c.set("andreev", cls.andreev ? andreev_json(*cls.andreev) : Json());
        c.set("min_angular_lead", cls.min_Fd);
        c.set("diagnostics", cls.diagnostics);
        j.set("classification", std::move(c));
    }

    // chart selection
    std::optional<CylinderEquation> cyl;
    std::optional<NormalizedSystem> normalized;
    std::string chart_note;
    const std::string& want = opts.chart;
    if (cls.tag == SingularityClass::Tag::NotMonodromicOrUnknown && want.empty()) {
        j.set("chart", Json());
        j.set("dynamics", Json());
        j.set("iif_analysis", Json());
        Json v = Json::object();
        v.set("kind", "abstained");
        v.set("clause", "the origin is not certified monodromic: " + cls.diagnostics);
        j.set("verdict", std::move(v));
        j.set("exit_hint", 2);
        out.exit_code = 2;
        return out;
    }

    if (want == "polar" ||
        (want.empty() && (cls.tag == SingularityClass::Tag::NonDegenerateFocusCandidate ||
                          cls.tag == SingularityClass::Tag::DegenerateNoCharDir))) {
        cyl = polar_lift(sys, cls.d);
    } else if (want == "direct") {
        int nt = cls.andreev ? cls.andreev->n : 0;
        if (nt >= 2) {
            cyl = direct_lift(sys, nt, true);
        } else {
            for (int cand = 2; cand <= 8 && !cyl; ++cand) {
                try {
                    cyl = direct_lift(sys, cand, false);
                    chart_note = "direct chart with n = " + std::to_string(cand);
                } catch (const LiftError&) {
                }
            }
            if (!cyl) throw LiftError("no quasihomogeneous direct chart found for n in 2..8");
        }
    } else {
        // nilpotent path (also --chart genpolar)
        if (!cls.andreev || !cls.andreev->monodromic)
            throw LiftError("generalized polar chart requires a monodromic nilpotent point");
        int n = cls.andreev->n;
        try {
            cyl = direct_lift(sys, n, true);
            chart_note = "direct quasihomogeneous route";
        } catch (const LiftError&) {
            normalized = normalize_nilpotent(sys, *cls.andreev);
            cyl = genpolar_lift(*normalized);
            chart_note = "normalized route";
        }
    }
    if (cyl->chart().kind == ChartKind::GenPolar && cyl->den_shift() == 0)
        chart_note += (chart_note.empty() ? "" : "; ") +
                      std::string("direct chart, order-0 angular speed");

    {
        Json c = Json::object();
        c.set("kind", cyl->chart().kind == ChartKind::Polar ? "polar" : "genpolar");
        c.set("index", cyl->chart().index);
        c.set("period", cyl->period());
        c.set("delta", cyl->delta());
        c.set("orientation_flipped", cyl->orientation_flipped());
        c.set("lead_power", cyl->lead_power());
        c.set("zero_field", cyl->is_zero());
        c.set("parity_law", cyl->chart().parity_law);
        c.set("note", chart_note);
        j.set("chart", std::move(c));
    }

    // dynamics
    PoincareData prof;
    int m_hat = 0;
    double c_hat = 0;
    std::string dyn_note;
    try {
        auto [mh, ch] = estimate_multiplicity(*cyl, &prof);
        m_hat = mh;
        c_hat = ch;
    } catch (const Error& e) {
        dyn_note = e.what();
    }
    double chi = characteristic_exponent(*cyl);
    {
        Json dyn = Json::object();
        dyn.set("m_hat", m_hat);
        dyn.set("c_hat", c_hat);
        dyn.set("center_like", prof.center_like);
        dyn.set("raw_slope", prof.raw_slope);
        dyn.set("char_exponent", chi);
        dyn.set("sign_pattern", std::string(1, prof.sign_pos) + "/" + std::string(1, prof.sign_neg));
        dyn.set("samples", static_cast<long>(prof.r0.size()));
        dyn.set("skipped", static_cast<long>(prof.skipped));
        dyn.set("note", dyn_note.empty() ? prof.note : dyn_note);
        j.set("dynamics", std::move(dyn));
    }
    out.profile = prof;

    // inverse-integrating-factor path
    std::optional<CyclicityVerdict> verdict;
    if (v0) {
        Json ii = Json::object();
        PdeReport pde = verify_iif_pde(*v0, sys, v0->poly && sys.polynomial()
                                                    ? PdeMode::Symbolic
                                                    : PdeMode::Numeric);
        {
            Json p = Json::object();
            p.set("mode", pde.symbolic ? "symbolic" : "numeric");
            if (pde.symbolic) {
                p.set("exact_zero", pde.exact_zero);
                p.set("residual", pde.residual_str);
            } else {
                p.set("max_rel_residual", pde.max_rel_residual);
            }
            ii.set("pde", std::move(p));
        }

        try {
            LiftedIIF lifted = lift_iif(*v0, *cyl);
            VanishingMultiplicity vm = vanishing_multiplicity(lifted);
            double ident = check_poincare_identity(lifted, prof);
            VmConsistency cons = v_m_consistency(lifted, vm);
            ii.set("m", vm.m);
            ii.set("m_provenance", vm.symbolic ? "symbolic" : "fitted");
            ii.set("vm_theta0", vm.vm.empty() ? Json() : Json(vm.vm[0]));
            ii.set("identity_residual", ident);
            ii.set("vm_ode_residual", cons.max_ode_residual);
            ii.set("vm_closed_form_dev", cons.max_closed_form_dev);
            verdict = classify_and_bound(vm.m, cyl->chart(),
                                         m_hat >= 1 ? std::optional<int>(m_hat) : std::nullopt,
                                         prof.center_like, v0->poly.has_value());
        } catch (const Undecided& e) {
            ii.set("m", Json());
            ii.set("m_provenance", "none");
            ii.set("note", e.what());
            CyclicityVerdict v;
            v.kind = CyclicityVerdict::Kind::Abstained;
            v.clause = std::string("abstained: ") + e.what();
            verdict = v;
            out.exit_code = 2;
        }
        j.set("iif_analysis", std::move(ii));
    } else {
        j.set("iif_analysis", Json());
    }

    if (verdict) {
        Json v = Json::object();
        v.set("kind", verdict_name(verdict->kind));
        v.set("m", verdict->m);
        if (verdict->kind == CyclicityVerdict::Kind::Focus) {
            v.set("lower_bound", verdict->lower_bound);
            v.set("restricted_count", verdict->restricted_count);
            v.set("exact", verdict->exact);
        }
        v.set("clause", verdict->clause);
        j.set("verdict", std::move(v));
        if (verdict->kind == CyclicityVerdict::Kind::Abstained) out.exit_code = 2;
    } else {
        j.set("verdict", Json());
    }
    j.set("exit_hint", out.exit_code);
    return out;
}

} // namespace cyc
