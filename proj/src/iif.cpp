#include "cyclicity/iif.hpp"

#include <algorithm>
#include <cmath>

#include "cyclicity/errors.hpp"

namespace cyc {

namespace {

inline double ipow(double x, int e) {
    if (e < 0) return 1.0 / ipow(x, -e);
    double acc = 1.0, b = x;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

} // namespace

IIFCandidate IIFCandidate::from_text(const std::string& text, const Bindings& params,
                                     bool assume_nonneg_bases) {
    ParsedExpression pe = parse_expression(text, assume_nonneg_bases);
    IIFCandidate out;
    out.ast = pe.ast;
    out.params = params;
    out.restricted_domain = pe.restricted_domain;
    for (auto& name : pe.params)
        if (!params.count(name)) throw ParseError("unbound parameter '" + name + "' in V0");
    out.poly = to_poly2(pe.ast, params);
    return out;
}

PdeReport verify_iif_pde(const IIFCandidate& v0, const ParsedSystem& sys, PdeMode mode) {
    PdeReport rep;
    if (mode == PdeMode::Symbolic) {
        if (!v0.poly || !sys.polynomial())
            throw DomainError("symbolic PDE check requires polynomial V0 and field");
        const Poly2& V = *v0.poly;
        Poly2 residual = *sys.P * V.dx() + *sys.Q * V.dy() - (sys.P->dx() + sys.Q->dy()) * V;
        rep.symbolic = true;
        rep.exact_zero = residual.is_zero();
        rep.residual_str = residual.str();
        return rep;
    }

    if (!sys.polynomial())
        throw DomainError("numeric PDE check requires a polynomial field");
    const int radii = 24, angles = 64;
    double worst = 0;
    Poly2 div = sys.P->dx() + sys.Q->dy();
    for (int i = 0; i < radii; ++i) {
        double r = 0.05 + (0.6 - 0.05) * i / (radii - 1);
        for (int k = 0; k < angles; ++k) {
            double th = 2 * M_PI * k / angles;
            double x = r * std::cos(th), y = r * std::sin(th);
            EvalResult g = eval_and_grad(v0.ast, x, y, v0.params);
            double res = sys.P->eval_d(x, y) * g.dx + sys.Q->eval_d(x, y) * g.dy -
                         div.eval_d(x, y) * g.v;
            worst = std::max(worst, std::fabs(res) / (1.0 + std::fabs(g.v)));
        }
    }
    rep.symbolic = false;
    rep.max_rel_residual = worst;
    return rep;
}

LiftedIIF lift_iif(const IIFCandidate& v0, const CylinderEquation& cyl) {
    LiftedIIF out;
    out.cyl = &cyl;
    const Chart& chart = cyl.chart();
    const int n = chart.kind == ChartKind::Polar ? 1 : chart.index;
    out.div_exp = cyl.den_shift() + (chart.kind == ChartKind::Polar ? 1 : n);

    if (v0.poly) {
        TrigSum U;
        for (auto& [k, c] : v0.poly->terms()) {
            double cd = c.to_double();
            if (cyl.orientation_flipped() && (k.second % 2)) cd = -cd;
            U.add(cd, k.first + n * k.second, k.first, k.second);
        }
        U.prune();
        if (U.empty()) throw DomainError("V0 is identically zero");
        out.numer = U;
        out.symbolic = true;
        const TrigSum* numer = &*out.numer;
        int div_exp = out.div_exp;
        const CylinderEquation* c = &cyl;
        out.V = [numer, div_exp, c](double r, double th) {
            auto [cs, sn] = c->trig(th);
            double D = c->den().eval(r, cs, sn);
            return numer->eval(r, cs, sn) / (ipow(r, div_exp) * D);
        };
        return out;
    }

    ExprPtr ast = v0.ast;
    Bindings params = v0.params;
    int div_exp = out.div_exp;
    const CylinderEquation* c = &cyl;
    out.V = [ast, params, div_exp, c](double r, double th) {
        auto [x, y] = c->to_cartesian(r, th);
        EvalResult g = eval_and_grad(ast, x, y, params);
        auto [cs, sn] = c->trig(th);
        double D = c->den().eval(r, cs, sn);
        return g.v / (ipow(r, div_exp) * D);
    };
    // sampled non-degeneracy check
    bool nonzero = false;
    double rprobe = std::min(cyl.delta() / 4, 0.25);
    for (int k = 0; k < 32 && !nonzero; ++k) {
        try {
            if (std::fabs(out.V(rprobe, cyl.period() * k / 32.0)) > 1e-300) nonzero = true;
        } catch (const DomainError&) {
        }
    }
    if (!nonzero) throw DomainError("lifted V vanishes on the sampled annulus");
    return out;
}

VanishingMultiplicity vanishing_multiplicity(const LiftedIIF& lifted, int theta_samples) {
    const CylinderEquation& cyl = *lifted.cyl;
    VanishingMultiplicity out;
    const double T = cyl.period();

    if (lifted.symbolic && lifted.numer) {
        // exact exponents: group the numerator by r-power; the lowest power
        // with a nonvanishing angular part gives m directly
        int wmin = lifted.numer->min_rpow();
        out.m = wmin - lifted.div_exp;
        out.symbolic = true;
        out.slope = out.m;
        for (int k = 0; k < theta_samples; ++k) {
            double th = T * k / theta_samples;
            auto [cs, sn] = cyl.trig(th);
            double u = 0;
            for (auto& t : lifted.numer->terms)
                if (t.rp == wmin) u += t.c * ipow(cs, t.cs) * ipow(sn, t.sn);
            double vm = u / cyl.theta_lead(th);
            out.theta.push_back(th);
            out.vm.push_back(vm);
        }
        double umax = 0;
        for (double v : out.vm) umax = std::max(umax, std::fabs(v));
        for (double v : out.vm)
            if (std::fabs(v) < 1e-9 * std::max(1.0, umax))
                throw Undecided("leading angular coefficient v_m vanishes at a sampled angle");
        return out;
    }

    // numeric route: per-angle log-log slopes over a dyadic radius ladder
    std::vector<double> slopes;
    double rtop = std::min(cyl.delta() / 2, 0.5);
    for (int k = 0; k < theta_samples; ++k) {
        double th = T * k / theta_samples;
        std::vector<std::pair<double, double>> pts;
        for (int j = 0; j < 18; ++j) {
            double r = rtop * std::pow(2.0, -j);
            if (r < 1e-7) break;
            double v = lifted.V(r, th);
            if (!std::isfinite(v) || std::fabs(v) < 1e-280) continue;
            pts.emplace_back(std::log(r), std::log(std::fabs(v)));
        }
        if (pts.size() < 6) throw Undecided("too few valid samples of V for the slope fit");
        size_t use = 8;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        size_t start = pts.size() - std::min(use, pts.size());
        size_t cnt = pts.size() - start;
        for (size_t i = start; i < pts.size(); ++i) {
            sx += pts[i].first;
            sy += pts[i].second;
            sxx += pts[i].first * pts[i].first;
            sxy += pts[i].first * pts[i].second;
        }
        double nn = static_cast<double>(cnt);
        slopes.push_back((nn * sxy - sx * sy) / (nn * sxx - sx * sx));
    }
    double smin = *std::min_element(slopes.begin(), slopes.end());
    double smax = *std::max_element(slopes.begin(), slopes.end());
    out.slope = 0.5 * (smin + smax);
    if (smax - smin > 0.05) {
        out.note = "theta-dependent slopes: no Laurent leading term";
        throw Undecided(out.note);
    }
    long snap = std::lround(out.slope);
    if (std::fabs(out.slope - snap) > 0.05) {
        out.note = "non-integer leading exponent " + std::to_string(out.slope);
        throw Undecided(out.note);
    }
    out.m = static_cast<int>(snap);

    // v_m by Richardson extrapolation of V/r^m at two small radii
    double rs = rtop * std::pow(2.0, -10);
    for (int k = 0; k < theta_samples; ++k) {
        double th = T * k / theta_samples;
        double v1 = lifted.V(rs, th) / ipow(rs, out.m);
        double v2 = lifted.V(rs / 2, th) / ipow(rs / 2, out.m);
        out.theta.push_back(th);
        out.vm.push_back(2 * v2 - v1);
    }
    double umax = 0;
    for (double v : out.vm) umax = std::max(umax, std::fabs(v));
    for (double v : out.vm)
        if (std::fabs(v) < 1e-6 * std::max(1.0, umax))
            throw Undecided("fitted v_m vanishes at a sampled angle");
    return out;
}

double check_poincare_identity(const LiftedIIF& lifted, const PoincareData& grid) {
    const CylinderEquation& cyl = *lifted.cyl;
    const double T = cyl.period();
    double worst = 0;
    for (size_t i = 0; i < grid.r0.size(); ++i) {
        if (grid.r0[i] == 0.0) continue;
        double lhs = lifted.V(grid.Pi[i], T);
        double rhs = lifted.V(grid.r0[i], 0.0) * grid.dPi[i];
        double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1e-300});
        worst = std::max(worst, std::fabs(lhs - rhs) / scale);
    }
    return worst;
}

VmConsistency v_m_consistency(const LiftedIIF& lifted, const VanishingMultiplicity& vmdata) {
    const CylinderEquation& cyl = *lifted.cyl;
    const double T = cyl.period();
    const int M = 512;
    const int m = vmdata.m;

    // dense resample of v_m
    std::vector<double> v(M), f1(M);
    if (vmdata.symbolic && lifted.numer) {
        int wmin = lifted.numer->min_rpow();
        for (int i = 0; i < M; ++i) {
            double th = T * i / M;
            auto [cs, sn] = cyl.trig(th);
            double u = 0;
            for (auto& t : lifted.numer->terms)
                if (t.rp == wmin) u += t.c * ipow(cs, t.cs) * ipow(sn, t.sn);
            v[i] = u / cyl.theta_lead(th);
        }
    } else {
        double rs = std::min(cyl.delta() / 2, 0.5) * std::pow(2.0, -10);
        for (int i = 0; i < M; ++i) {
            double th = T * i / M;
            double v1 = lifted.V(rs, th) / ipow(rs, m);
            double v2 = lifted.V(rs / 2, th) / ipow(rs / 2, m);
            v[i] = 2 * v2 - v1;
        }
    }
    for (int i = 0; i < M; ++i) f1[i] = cyl.F1(T * i / M);

    VmConsistency out;
    double h = T / M;
    double scale = 0;
    for (double x : v) scale = std::max(scale, std::fabs(x));
    for (int i = 0; i < M; ++i) {
        double vp = (-v[(i + 2) % M] + 8 * v[(i + 1) % M] - 8 * v[(i - 1 + M) % M] +
                     v[(i - 2 + M) % M]) /
                    (12 * h);
        double res = vp - (1 - m) * f1[i] * v[i];
        out.max_ode_residual = std::max(out.max_ode_residual, std::fabs(res) / std::max(1.0, scale));
    }

    // closed form against high-order quadrature of int F1
    double acc = 0;
    double worst = 0;
    // 5-point Gauss-Legendre per cell keeps the cumulative integral at
    // machine precision
    static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                 0.5384693101056831, 0.9061798459386640};
    static const double gw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};
    for (int i = 0; i < M; ++i) {
        double pred = v[0] * std::exp((1 - m) * acc);
        worst = std::max(worst, std::fabs(v[i] - pred) / std::max(1.0, scale));
        double a = T * i / M, b = T * (i + 1) / M;
        double mid = (a + b) / 2, half = (b - a) / 2;
        double cell = 0;
        for (int g = 0; g < 5; ++g) cell += gw[g] * cyl.F1(mid + half * gx[g]);
        acc += cell * half;
    }
    out.max_closed_form_dev = worst;
    return out;
}

CyclicityVerdict classify_and_bound(int m, const Chart& chart, std::optional<int> m_hat,
                                    bool center_like_evidence, bool analytic_v0) {
    CyclicityVerdict out;
    out.m = m;
    const bool polar = chart.kind == ChartKind::Polar;
    const int dn = chart.index;

    if (m <= 0) {
        out.kind = CyclicityVerdict::Kind::Center;
        out.clause = "center: nonpositive vanishing multiplicity";
        return out;
    }
    bool parity_center = polar ? (m % 2 == 0) : ((m + dn) % 2 == 1);
    if (parity_center) {
        out.kind = CyclicityVerdict::Kind::Center;
        out.clause = polar ? "center: even vanishing multiplicity in a polar chart"
                           : "center: m + n odd in a generalized polar chart";
        return out;
    }

    if (!polar && analytic_v0 && dn % 2 == 0) {
        // an analytic inverse integrating factor around a nilpotent focus
        // forces an odd Andreev number
        if (m_hat && *m_hat >= 1) {
            out.kind = CyclicityVerdict::Kind::Inconsistent;
            out.clause = "inconsistent: analytic V0 with focus evidence requires odd n";
            return out;
        }
    }

    if (center_like_evidence) {
        out.kind = CyclicityVerdict::Kind::CenterLike;
        out.clause = "center-like: displacement below the noise floor (numeric evidence, "
                     "not a proof)";
        return out;
    }
    if (!m_hat || *m_hat < 1) {
        out.kind = CyclicityVerdict::Kind::Abstained;
        out.clause = "abstained: focus requires dynamic evidence or a user assertion";
        return out;
    }

    out.kind = CyclicityVerdict::Kind::Focus;
    out.lower_bound = (m + dn) / 2 - 1;
    out.restricted_count = (m - 1) / 2; // integer division is the floor here
    out.exact = polar && dn == 1;
    if (out.exact)
        out.clause = "focus on a non-degenerate chart: cyclicity equals (m-1)/2";
    else if (polar)
        out.clause = "focus: cyclicity >= (m+d)/2-1; subdegree-restricted count (m-1)/2";
    else
        out.clause = "focus: cyclicity >= (m+n)/2-1; quasihomogeneous-restricted count "
                     "floor((m-1)/2)";
    return out;
}

} // namespace cyc
