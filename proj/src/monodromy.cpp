#include "cyclicity/monodromy.hpp"

#include <cmath>

#include "cyclicity/errors.hpp"
#include "cyclicity/univar.hpp"

namespace cyc {

CharDirections characteristic_directions(const Poly2& p_d, const Poly2& q_d) {
    int dp = p_d.total_degree(), dq = q_d.total_degree();
    int d = std::max(dp, dq);
    if (d < 0) throw DomainError("characteristic directions of the zero pair");
    if ((dp >= 0 && !p_d.is_homogeneous(dp)) || (dq >= 0 && !q_d.is_homogeneous(dq)) ||
        (dp >= 0 && dq >= 0 && dp != dq))
        throw DomainError("inputs must be homogeneous of equal degree");

    Poly2 G = Poly2::var_x() * q_d - Poly2::var_y() * p_d;
    CharDirections out;
    if (G.is_zero()) {
        out.kind = CharDirections::Kind::IdenticallyZero;
        return out;
    }
    int k = 1 << 30;
    for (auto& [key, c] : G.terms()) k = std::min(k, key.first);
    out.vertical = k >= 1;

    // H = G / x^k, then h(t) = H(1,t); real roots t are directions y = t*x.
    int D = G.total_degree() - k;
    std::vector<Rational> h(D + 1, Rational(0));
    for (auto& [key, c] : G.terms()) h[key.second] = c;
    RatPoly hp(std::move(h));
    out.real_root_count = hp.degree() >= 1 ? sturm_real_root_count(hp) : 0;
    if (hp.degree() >= 1) out.slopes = isolate_real_roots(hp);

    if (!out.vertical && out.real_root_count == 0 && out.slopes.empty())
        out.kind = CharDirections::Kind::None;
    else
        out.kind = CharDirections::Kind::Some;
    return out;
}

namespace {

// Certified positive minimum of |G(cos t, sin t)| (Sturm already excluded
// zeros); grid minimum with a term-wise Lipschitz bound.
double circle_min_abs(const Poly2& G) {
    double L = 0;
    for (auto& [k, c] : G.terms()) L += std::fabs(c.to_double()) * (k.first + k.second);
    const int M = 2048;
    double h = 2 * M_PI / M;
    double mn = 1e300;
    for (int i = 0; i < M; ++i) {
        double th = i * h;
        mn = std::min(mn, std::fabs(G.eval_d(std::cos(th), std::sin(th))));
    }
    if (mn - L * h / 2 <= 0) return 0.0; // not certified by the grid
    return mn;
}

Rational binom(int nn, int kk) {
    Rational r(1);
    for (int i = 0; i < kk; ++i) r = r * Rational(nn - i) / Rational(i + 1);
    return r;
}

// p(u, v + F(u)) truncated at (1,n)-weighted degree W, exact arithmetic.
Poly2 shift_y_by_series(const Poly2& p, const PowerSeries1& F, int n, int W) {
    int maxj = 0;
    for (auto& [k, c] : p.terms()) maxj = std::max(maxj, k.second);
    // powers of F as series in u
    std::vector<PowerSeries1> Fpow(maxj + 1, PowerSeries1(W));
    Fpow[0].set_coeff(0, Rational(1));
    for (int j = 1; j <= maxj; ++j) Fpow[j] = (Fpow[j - 1] * F).truncated(W);

    Poly2 out;
    for (auto& [key, c] : p.terms()) {
        int i = key.first, j = key.second;
        for (int k = 0; k <= j; ++k) {
            // c * C(j,k) * u^i * v^k * F(u)^(j-k)
            if (i + n * k > W) continue;
            Rational ck = c * binom(j, k);
            const PowerSeries1& fp = Fpow[j - k];
            int mmax = W - i - n * k;
            for (int m = 0; m <= std::min(mmax, fp.order()); ++m) {
                if (fp.coeff(m).is_zero()) continue;
                out.set_coeff(i + m, k, out.coeff(i + m, k) + ck * fp.coeff(m));
            }
        }
    }
    return out;
}

} // namespace

std::pair<Poly2, Poly2> nilpotent_frame(const Poly2& P, const Poly2& Q) {
    Rational p10 = P.coeff(1, 0), p01 = P.coeff(0, 1);
    Rational q10 = Q.coeff(1, 0), q01 = Q.coeff(0, 1);
    if (!(p10 + q01).is_zero() || !(p10 * q01 - p01 * q10).is_zero())
        throw DomainError("linear part is not nilpotent");
    if (p10.is_zero() && p01.is_zero() && q10.is_zero() && q01.is_zero())
        throw DomainError("linear part is zero");

    // basis u = L*v with v a coordinate direction; columns M = [u | v]
    Rational m11, m21, m12, m22;
    if (!p10.is_zero() || !q10.is_zero()) {
        m12 = Rational(1); m22 = Rational(0); // v = e1
        m11 = p10; m21 = q10;
    } else {
        m12 = Rational(0); m22 = Rational(1); // v = e2
        m11 = p01; m21 = q01;
    }
    Rational det = m11 * m22 - m12 * m21;
    if (det.is_zero()) throw DomainError("failed to build a nilpotent basis");

    Poly2 Pm = P.subst_linear(m11, m12, m21, m22);
    Poly2 Qm = Q.subst_linear(m11, m12, m21, m22);
    Rational inv = det.inverse();
    Poly2 newP = (Pm.scaled(m22) - Qm.scaled(m12)).scaled(inv);
    Poly2 newQ = (Qm.scaled(m11) - Pm.scaled(m21)).scaled(inv);

    if (!newP.coeff(0, 1).is_one() || !newP.coeff(1, 0).is_zero() ||
        !newQ.coeff(1, 0).is_zero() || !newQ.coeff(0, 1).is_zero())
        throw DomainError("nilpotent frame normalization failed");
    return {newP, newQ};
}

MonodromyReport andreev_analyze(const Poly2& P2in, const Poly2& Q2in, int order) {
    if (!P2in.is_zero() && P2in.lowest_degree() < 2)
        throw DomainError("P2 must have no constant or linear terms");
    if (!Q2in.is_zero() && Q2in.lowest_degree() < 2)
        throw DomainError("Q2 must have no constant or linear terms");

    int N = std::max(order, 16);
    MonodromyReport rep;
    Poly2 trace = P2in.dx() + Q2in.dy();

    for (int attempt = 0; attempt < 2; ++attempt) {
        rep = MonodromyReport{};
        rep.trunc_order = N;
        rep.F = series_solve_implicit(P2in, N);
        rep.f = substitute_y(Q2in, rep.F);
        rep.phi = substitute_y(trace, rep.F);
        auto lead = rep.f.leading();
        if (!lead) {
            if (attempt == 0) { N = 2 * N + 4; continue; }
            throw Undecided("f vanishes through the truncation order; undecided at order " +
                            std::to_string(N));
        }
        rep.alpha = lead->first;
        rep.a = lead->second;
        if (N < 2 * rep.alpha + 4 && attempt == 0) {
            N = 2 * rep.alpha + 4;
            continue;
        }
        break;
    }

    auto phil = rep.phi.leading();
    if (phil) {
        rep.beta = phil->first;
        rep.b = phil->second;
    }

    if (rep.a.sign() >= 0) {
        rep.note = "not monodromic: leading coefficient of f is nonnegative";
        return rep;
    }
    if (rep.alpha % 2 == 0) {
        rep.note = "not monodromic: leading exponent of f is even";
        return rep;
    }
    rep.n = (rep.alpha + 1) / 2;
    if (rep.n < 2) {
        rep.note = "not monodromic: Andreev number below 2";
        return rep;
    }

    if (!rep.beta) {
        rep.monodromic = true;
        rep.monodromy_case = 3;
        rep.note = "phi == 0 through order " + std::to_string(rep.trunc_order);
    } else if (*rep.beta > rep.n - 1) {
        rep.monodromic = true;
        rep.monodromy_case = 1;
    } else if (*rep.beta == rep.n - 1) {
        Rational disc = (*rep.b) * (*rep.b) + Rational(4 * rep.n) * rep.a;
        if (disc.sign() < 0) {
            rep.monodromic = true;
            rep.monodromy_case = 2;
        } else {
            rep.note = "not monodromic: b^2 + 4an >= 0";
        }
    } else {
        rep.note = "not monodromic: beta < n-1";
    }

    if (rep.monodromic)
        rep.xi = std::pow((-rep.a.inverse()).to_double(), 1.0 / (2.0 - 2.0 * rep.n));
    return rep;
}

SingularityClass classify_singularity(const ParsedSystem& sys) {
    if (!sys.polynomial())
        throw DomainError("classification requires a polynomial system");
    const Poly2& P = *sys.P;
    const Poly2& Q = *sys.Q;
    if (P.is_zero() && Q.is_zero()) throw DomainError("identically zero vector field");

    SingularityClass out;
    Rational p10 = P.coeff(1, 0), p01 = P.coeff(0, 1);
    Rational q10 = Q.coeff(1, 0), q01 = Q.coeff(0, 1);
    Rational tr = p10 + q01;
    Rational det = p10 * q01 - p01 * q10;
    bool linear_zero = p10.is_zero() && p01.is_zero() && q10.is_zero() && q01.is_zero();

    if (!det.is_zero()) {
        Rational disc = tr * tr - Rational(4) * det;
        if (disc.sign() < 0) {
            out.tag = SingularityClass::Tag::NonDegenerateFocusCandidate;
            out.d = 1;
            Poly2 G = Poly2::var_x() * Q.homogeneous_part(1) - Poly2::var_y() * P.homogeneous_part(1);
            out.min_Fd = circle_min_abs(G);
            out.diagnostics = "complex eigenvalues";
            return out;
        }
        out.tag = SingularityClass::Tag::NotMonodromicOrUnknown;
        out.diagnostics = "non-degenerate with real eigenvalues (node or saddle)";
        return out;
    }

    if (!linear_zero) {
        if (!tr.is_zero()) {
            out.tag = SingularityClass::Tag::NotMonodromicOrUnknown;
            out.diagnostics = "semi-hyperbolic point (one nonzero eigenvalue)";
            return out;
        }
        auto [P2sysP, P2sysQ] = nilpotent_frame(P, Q);
        Poly2 P2 = P2sysP - Poly2::var_y();
        MonodromyReport rep = andreev_analyze(P2, P2sysQ);
        if (rep.monodromic) {
            out.tag = SingularityClass::Tag::Nilpotent;
            out.d = 1;
            out.andreev = std::move(rep);
            out.diagnostics = "nilpotent monodromic point";
        } else {
            out.tag = SingularityClass::Tag::NotMonodromicOrUnknown;
            out.diagnostics = "nilpotent, " + rep.note;
            out.andreev = std::move(rep);
        }
        return out;
    }

    // fully degenerate: lowest homogeneous pair
    int dP = P.is_zero() ? 1 << 30 : P.lowest_degree();
    int dQ = Q.is_zero() ? 1 << 30 : Q.lowest_degree();
    int d = std::min(dP, dQ);
    Poly2 pd = P.homogeneous_part(d), qd = Q.homogeneous_part(d);
    if (d % 2 == 0) {
        out.tag = SingularityClass::Tag::NotMonodromicOrUnknown;
        out.diagnostics = "even lowest degree " + std::to_string(d) +
                          "; never monodromic without characteristic directions";
        return out;
    }
    CharDirections cd = characteristic_directions(pd, qd);
    if (cd.kind == CharDirections::Kind::None) {
        out.tag = SingularityClass::Tag::DegenerateNoCharDir;
        out.d = d;
        Poly2 G = Poly2::var_x() * qd - Poly2::var_y() * pd;
        out.min_Fd = circle_min_abs(G);
        out.diagnostics = "degree " + std::to_string(d) + ", no characteristic directions";
        return out;
    }
    out.tag = SingularityClass::Tag::NotMonodromicOrUnknown;
    out.diagnostics = cd.kind == CharDirections::Kind::IdenticallyZero
                          ? "x*q_d - y*p_d vanishes identically"
                          : "characteristic directions present";
    return out;
}

NormalizedSystem normalize_nilpotent(const ParsedSystem& sys, const MonodromyReport& report) {
    if (!report.monodromic) throw DomainError("cannot normalize a non-monodromic point");
    auto [Pf, Qf] = nilpotent_frame(*sys.P, *sys.Q);
    Poly2 P2 = Pf - Poly2::var_y();
    const Poly2& Q2 = Qf;

    int n = report.n;
    int W = std::max(2 * report.alpha + 4, 16) + 2 * n;
    PowerSeries1 F = series_solve_implicit(P2, W);
    PowerSeries1 Fp = F.derivative();

    // change (x,y) -> (x, y - F(x)):  P^ = v + F + P2(u, v+F),  Q^ = Q2(u, v+F) - F'(u)*P^
    Poly2 Pc = shift_y_by_series(P2, F, n, W);
    Poly2 Phat = Pc + Poly2::monomial(0, 1, Rational(1));
    for (int m = 0; m <= std::min(W, F.order()); ++m)
        Phat.set_coeff(m, 0, Phat.coeff(m, 0) + F.coeff(m));
    // the v^0 row must cancel exactly up to the truncation order
    for (auto& [key, c] : Phat.terms())
        if (key.second == 0 && key.first <= W && !c.is_zero())
            throw DomainError("normalization failed: x' does not vanish on y = F(x)");
    Poly2 Fpoly; // F'(u) as a polynomial in u
    for (int m = 0; m <= std::min(W, Fp.order()); ++m) Fpoly.set_coeff(m, 0, Fp.coeff(m));
    Poly2 Qhat = shift_y_by_series(Q2, F, n, W) - Fpoly * Phat;

    // scaling (x,y) -> (xi*x, -xi*y)
    double xi = report.xi;
    NormalizedSystem out;
    out.n = n;
    out.xi = xi;
    out.trunc_w = W;
    out.report = report;
    for (auto& [key, c] : Phat.terms()) {
        if (key.first + n * key.second > W) continue;
        double s = std::pow(xi, 1.0 - key.first - key.second) * ((key.second % 2) ? -1.0 : 1.0);
        out.P.add_term(key.first, key.second, c.to_double() * s);
    }
    for (auto& [key, c] : Qhat.terms()) {
        if (key.first + n * key.second > W) continue;
        double s = -std::pow(xi, 1.0 - key.first - key.second) * ((key.second % 2) ? -1.0 : 1.0);
        out.Q.add_term(key.first, key.second, c.to_double() * s);
    }
    out.P.prune();
    out.Q.prune();

    // relabelled data and structural checks
    double lead = out.Q.coeff(2 * n - 1, 0);
    if (std::fabs(lead - 1.0) > 1e-9)
        throw DomainError("normalization failed: f does not lead with +x^(2n-1)");
    for (auto& [key, c] : out.P.terms())
        if (key.second == 0 && std::fabs(c) > 1e-9)
            throw DomainError("normalization failed: x' has a y-free term");
    if (std::fabs(out.P.coeff(0, 1) + 1.0) > 1e-12)
        throw DomainError("normalization failed: x' does not start with -y");

    out.f_post.assign(W + 1, 0.0);
    out.phi_post.assign(W + 1, 0.0);
    for (auto& [key, c] : out.Q.terms()) {
        if (key.second == 0 && key.first <= W) out.f_post[key.first] = c;
        if (key.second == 1 && key.first <= W) out.phi_post[key.first] = c;
    }
    for (int k = 0; k <= W; ++k)
        if (out.phi_post[k] != 0.0) { out.b_post = out.phi_post[k]; break; }
    return out;
}

} // namespace cyc
