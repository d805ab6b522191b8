#include "cyclicity/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <map>

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

void TrigSum::add(double c, int rp, int cs, int sn) {
    if (c == 0.0) return;
    for (auto& t : terms) {
        if (t.rp == rp && t.cs == cs && t.sn == sn) {
            t.c += c;
            return;
        }
    }
    terms.push_back({c, rp, cs, sn});
}

int TrigSum::min_rpow() const {
    int m = 1 << 30;
    for (auto& t : terms) m = std::min(m, t.rp);
    return m;
}

void TrigSum::shift_rpow(int s) {
    for (auto& t : terms) t.rp -= s;
}

void TrigSum::prune(double rel_tol) {
    double mx = 0;
    for (auto& t : terms) mx = std::max(mx, std::fabs(t.c));
    std::erase_if(terms, [&](const TrigTerm& t) { return std::fabs(t.c) <= rel_tol * mx; });
}

TrigSum TrigSum::reflected(bool negate) const {
    TrigSum out;
    out.terms.reserve(terms.size());
    for (auto& t : terms) {
        double c = (t.sn % 2) ? -t.c : t.c;
        out.terms.push_back({negate ? -c : c, t.rp, t.cs, t.sn});
    }
    return out;
}

double TrigSum::eval(double r, double csv, double snv) const {
    double s = 0;
    for (auto& t : terms) s += t.c * ipow(r, t.rp) * ipow(csv, t.cs) * ipow(snv, t.sn);
    return s;
}

double TrigSum::eval_dr(double r, double csv, double snv) const {
    double s = 0;
    for (auto& t : terms) {
        if (t.rp == 0) continue;
        s += t.c * t.rp * ipow(r, t.rp - 1) * ipow(csv, t.cs) * ipow(snv, t.sn);
    }
    return s;
}

double TrigSum::eval_r0(double csv, double snv) const {
    double s = 0;
    for (auto& t : terms)
        if (t.rp == 0) s += t.c * ipow(csv, t.cs) * ipow(snv, t.sn);
    return s;
}

double TrigSum::angular_lipschitz() const {
    double L = 0;
    for (auto& t : terms)
        if (t.rp == 0) L += std::fabs(t.c) * (t.cs + t.sn);
    return L;
}

std::pair<double, double> CylinderEquation::trig(double theta) const {
    if (trig_) return trig_->eval(theta);
    return {std::cos(theta), std::sin(theta)};
}

std::pair<double, double> CylinderEquation::to_cartesian(double r, double theta) const {
    double sigma = flipped_ ? -1.0 : 1.0;
    auto [c, s] = trig(sigma * theta);
    if (chart_.kind == ChartKind::Polar) return {r * c, r * s};
    return {r * c, ipow(r, chart_.index) * s};
}

double CylinderEquation::F(double r, double theta) const {
    if (zero_) return 0.0;
    if (!(std::fabs(r) <= 2 * delta_))
        throw WindowExit("radius beyond twice the validity window", theta);
    auto [c, s] = trig(theta);
    double D = den_.eval(r, c, s);
    if (std::fabs(D) < 0.25 * den_floor_)
        throw WindowExit("angular speed lost its sign certificate", theta);
    return ipow(r, lead_) * num_.eval(r, c, s) / D;
}

double CylinderEquation::dF_dr(double r, double theta) const {
    if (zero_) return 0.0;
    if (!(std::fabs(r) <= 2 * delta_))
        throw WindowExit("radius beyond twice the validity window", theta);
    auto [c, s] = trig(theta);
    double D = den_.eval(r, c, s);
    if (std::fabs(D) < 0.25 * den_floor_)
        throw WindowExit("angular speed lost its sign certificate", theta);
    double N = num_.eval(r, c, s);
    double Nr = num_.eval_dr(r, c, s);
    double Dr = den_.eval_dr(r, c, s);
    double rl = ipow(r, lead_);
    double rlm1 = lead_ != 0 ? ipow(r, lead_ - 1) : 0.0;
    return lead_ * rlm1 * N / D + rl * (Nr * D - N * Dr) / (D * D);
}

double CylinderEquation::F1(double theta) const {
    if (zero_) return 0.0;
    if (lead_ >= 2) return 0.0;
    if (lead_ <= 0) throw DomainError("no Taylor expansion at r = 0 on this chart");
    auto [c, s] = trig(theta);
    return num_.eval_r0(c, s) / den_.eval_r0(c, s);
}

double CylinderEquation::theta_lead(double theta) const {
    auto [c, s] = trig(theta);
    return den_.eval_r0(c, s);
}

CylinderEquation lift_on_chart(const DPoly2& P, const DPoly2& Q, Chart chart,
                               bool require_analytic) {
    const int n = chart.index >= 1 ? (chart.kind == ChartKind::Polar ? 1 : chart.index) : 1;
    if (chart.index < 1) throw LiftError("chart index must be >= 1");

    CylinderEquation eq;
    eq.chart_ = chart;
    if (chart.kind == ChartKind::Polar) {
        eq.period_ = 2 * M_PI;
        eq.trig_ = nullptr;
    } else {
        eq.trig_ = &GenTrigTable::get(n);
        eq.period_ = eq.trig_->period();
    }

    // rdot = (x^(2n-1) P + y Q) / r^(2n-1), thetadot = (x Q - n y P) / r^(n+1),
    // with x = r Cs, y = r^n Sn; exact exponents per monomial.
    TrigSum num, den;
    for (auto& [k, c] : P.terms()) {
        int i = k.first, j = k.second;
        num.add(c, i + n * j, (2 * n - 1) + i, j);
        den.add(-n * c, i + n * j - 1, i, j + 1);
    }
    for (auto& [k, c] : Q.terms()) {
        int i = k.first, j = k.second;
        num.add(c, i + n * j - n + 1, i, j + 1);
        den.add(c, i + n * j - n, i + 1, j);
    }
    num.prune();
    den.prune();

    if (den.empty()) throw LiftError("no angular motion: x*Q - n*y*P vanishes identically");
    int e_den = den.min_rpow();
    den.shift_rpow(e_den);
    eq.den_shift_ = e_den;

    if (num.empty()) {
        eq.zero_ = true;
    } else {
        int e_num = num.min_rpow();
        num.shift_rpow(e_num);
        eq.lead_ = e_num - e_den;
        if (require_analytic && eq.lead_ < 1)
            throw LiftError("lift is not analytic at r = 0 (leading power " +
                            std::to_string(eq.lead_) + ")");
    }

    // Certify the leading angular coefficient nonvanishing and orient the
    // chart so it is positive.
    const int M = 2048;
    double h = eq.period_ / M;
    double mn = 1e300, mx = -1e300;
    for (int i = 0; i < M; ++i) {
        double th = i * h;
        auto [c, s] = eq.trig_ ? eq.trig_->eval(th)
                               : std::pair<double, double>{std::cos(th), std::sin(th)};
        double v = den.eval_r0(c, s);
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    double L = den.angular_lipschitz();
    if (mn > 0 && mn - L * h / 2 > 0) {
        eq.flipped_ = false;
    } else if (mx < 0 && -mx - L * h / 2 > 0) {
        eq.flipped_ = true;
        num = num.reflected(false);
        den = den.reflected(true);
    } else {
        throw LiftError("leading angular coefficient is not certified nonvanishing "
                        "(characteristic direction or sign change)");
    }
    eq.num_ = std::move(num);
    eq.den_ = std::move(den);

    // den floor and validity window
    {
        double mn0 = 1e300;
        for (int i = 0; i < M; ++i) {
            double th = i * h;
            auto [c, s] = eq.trig(th);
            mn0 = std::min(mn0, std::fabs(eq.den_.eval_r0(c, s)));
        }
        eq.den_floor_ = 0.5 * mn0;

        auto ok = [&](double r) {
            for (int i = 0; i < M; ++i) {
                double th = i * h;
                auto [c, s] = eq.trig(th);
                if (std::fabs(eq.den_.eval(r, c, s)) < eq.den_floor_) return false;
                if (std::fabs(eq.den_.eval(-r, c, s)) < eq.den_floor_) return false;
            }
            return true;
        };
        const double cap = 64.0; // r-independent denominators never degrade
        double r = cap;
        while (r > 1e-8 && !ok(r)) r *= 0.5;
        if (r <= 1e-8) throw LiftError("validity window collapsed");
        if (r < cap) { // one bisection refinement
            double mid = 1.5 * r;
            if (ok(mid)) r = mid;
        }
        eq.delta_ = r;
    }
    return eq;
}

CylinderEquation polar_lift(const ParsedSystem& sys, int d) {
    if (!sys.polynomial()) throw LiftError("polar lift requires a polynomial system");
    if (d < 1 || d % 2 == 0) throw LiftError("polar chart degree must be odd and >= 1");
    int low = std::min(sys.P->is_zero() ? 1 << 30 : sys.P->lowest_degree(),
                       sys.Q->is_zero() ? 1 << 30 : sys.Q->lowest_degree());
    if (low != d)
        throw LiftError("lowest homogeneous degree is " + std::to_string(low) +
                        ", not " + std::to_string(d));
    return lift_on_chart(DPoly2(*sys.P), DPoly2(*sys.Q), {ChartKind::Polar, d, true}, true);
}

CylinderEquation genpolar_lift(const NormalizedSystem& ns) {
    CylinderEquation eq =
        lift_on_chart(ns.P, ns.Q, {ChartKind::GenPolar, ns.n, true}, true);
    if (eq.orientation_flipped())
        throw LiftError("normalized nilpotent chart should already be positively oriented");
    // Structure of the leading angular coefficient for the normalized form:
    // identically 1 (beta > n-1 or phi == 0), or 1 + b Cs^n Sn with b^2 < 4n.
    if (ns.report.monodromy_case == 2 && ns.b_post) {
        double b = *ns.b_post;
        if (b * b >= 4.0 * ns.n)
            throw LiftError("square decomposition fails: b^2 >= 4n on a monodromic point");
    }
    return eq;
}

CylinderEquation direct_lift(const ParsedSystem& sys, int n_tilde, bool parity_known) {
    if (!sys.polynomial()) throw LiftError("direct lift requires a polynomial system");
    if (n_tilde < 2) throw LiftError("direct lift requires n >= 2");
    int a = lowest_weighted_degree(*sys.P, n_tilde);
    int b = lowest_weighted_degree(*sys.Q, n_tilde);
    if (a < 0 || b < 0) throw LiftError("direct lift requires nonzero P and Q");
    if (a - 1 != b - n_tilde || a - 1 < 0)
        throw LiftError("quasihomogeneous orders do not match: a-1 = " + std::to_string(a - 1) +
                        ", b-n = " + std::to_string(b - n_tilde));
    return lift_on_chart(DPoly2(*sys.P), DPoly2(*sys.Q),
                         {ChartKind::GenPolar, n_tilde, parity_known}, true);
}

} // namespace cyc
