#include "cyclicity/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cyclicity/dynamics.hpp"
#include "cyclicity/errors.hpp"

namespace cyc {

namespace {

DPoly2 circle_power(int e) { // (x^2+y^2)^e
    Poly2 c = (Poly2::monomial(2, 0, Rational(1)) + Poly2::monomial(0, 2, Rational(1))).pow(e);
    return DPoly2(c);
}

} // namespace

std::pair<DPoly2, DPoly2> PerturbationFamily::at(double eps) const {
    if (tag == FamilyTag::PresetEx3) {
        DPoly2 P = Pbase, Q = Qbase;
        // - eps (x+y), + eps (x-y)
        P.add_term(1, 0, -eps);
        P.add_term(0, 1, -eps);
        Q.add_term(1, 0, eps);
        Q.add_term(0, 1, -eps);
        return {P, Q};
    }

    DPoly2 K;
    const int terms = k_or_L;
    for (int i = 0; i < terms; ++i) {
        double w = coeffs[i] * std::pow(eps, terms - i);
        switch (tag) {
        case FamilyTag::DegP1:
            K += circle_power(i + (d_or_n - 1) / 2).scaled(w);
            break;
        case FamilyTag::DegP2:
            K += circle_power(i).scaled(w);
            break;
        case FamilyTag::NilP1: {
            int e = d_or_n % 2 ? (d_or_n - 1 + 2 * i) : (d_or_n + 2 * i);
            DPoly2 mono;
            mono.add_term(e, 0, w);
            K += mono;
            break;
        }
        case FamilyTag::NilP2: {
            DPoly2 mono;
            mono.add_term(2 * i, 0, w);
            K += mono;
            break;
        }
        default:
            break;
        }
    }
    DPoly2 P = Pbase, Q = Qbase;
    DPoly2 x, y;
    x.add_term(1, 0, 1.0);
    y.add_term(0, 1, 1.0);
    P += x * K;
    bool nil = tag == FamilyTag::NilP1 || tag == FamilyTag::NilP2;
    Q += (y * K).scaled(nil ? static_cast<double>(d_or_n) : 1.0);
    return {P, Q};
}

PerturbationFamily build_family(FamilyTag tag, const ParsedSystem& base, int m,
                                const std::vector<double>& coeffs) {
    if (tag == FamilyTag::NilP1 || tag == FamilyTag::NilP2)
        throw DomainError("nilpotent families need a normalized base");
    if (!base.polynomial()) throw DomainError("family base must be polynomial");

    PerturbationFamily fam;
    fam.tag = tag;
    fam.Pbase = DPoly2(*base.P);
    fam.Qbase = DPoly2(*base.Q);
    fam.m = m;

    if (tag == FamilyTag::PresetEx3) {
        // perturbed linear part has complex eigenvalues; the chart is the
        // non-degenerate polar one
        fam.d_or_n = 1;
        fam.chart = {ChartKind::Polar, 1, true};
        fam.k_or_L = 0;
        return fam;
    }

    int low = std::min(base.P->is_zero() ? 1 << 30 : base.P->lowest_degree(),
                       base.Q->is_zero() ? 1 << 30 : base.Q->lowest_degree());
    int d = low;
    if (d < 1 || d % 2 == 0) throw DomainError("family base must have odd lowest degree");
    fam.d_or_n = d;
    if (m < 1 || m % 2 == 0)
        throw DomainError("parity mismatch: polar-chart multiplicity must be odd and >= 1");

    if (tag == FamilyTag::DegP1) {
        fam.k_or_L = (m - 1) / 2;
        fam.chart = {ChartKind::Polar, d, true};
    } else {
        fam.k_or_L = (m + d) / 2 - 1;
        // subdegree-1 terms make the lift non-analytic at r = 0 but leave it
        // well-defined for r > 0; d = 1 labels the perturbed linear part
        fam.chart = {ChartKind::Polar, 1, true};
    }
    if (fam.k_or_L < 0) throw DomainError("negative perturbation order");
    fam.coeffs = coeffs;
    if (fam.coeffs.empty())
        for (int i = 0; i < fam.k_or_L; ++i) fam.coeffs.push_back(i % 2 ? -1.0 : 1.0);
    if (static_cast<int>(fam.coeffs.size()) != fam.k_or_L)
        throw DomainError("expected " + std::to_string(fam.k_or_L) + " coefficients");
    return fam;
}

PerturbationFamily build_family_nilpotent(FamilyTag tag, const NormalizedSystem& base, int m,
                                          const std::vector<double>& coeffs) {
    if (tag != FamilyTag::NilP1 && tag != FamilyTag::NilP2)
        throw DomainError("this builder is for the nilpotent families");
    PerturbationFamily fam;
    fam.tag = tag;
    fam.Pbase = base.P;
    fam.Qbase = base.Q;
    fam.m = m;
    fam.d_or_n = base.n;
    if (m < 1 || (m + base.n) % 2 != 0)
        throw DomainError("parity mismatch: m and n must have equal parity");
    fam.k_or_L = tag == FamilyTag::NilP1 ? (m - 1) / 2 : (m + base.n) / 2 - 1;
    fam.chart = {ChartKind::GenPolar, base.n, true};
    fam.coeffs = coeffs;
    if (fam.coeffs.empty())
        for (int i = 0; i < fam.k_or_L; ++i) fam.coeffs.push_back(i % 2 ? -1.0 : 1.0);
    if (static_cast<int>(fam.coeffs.size()) != fam.k_or_L)
        throw DomainError("expected " + std::to_string(fam.k_or_L) + " coefficients");
    return fam;
}

std::vector<CycleHit> count_limit_cycles(const PerturbationFamily& fam, double eps,
                                         double r_max, int grid, double* delta_out) {
    auto [P, Q] = fam.at(eps);
    CylinderEquation cyl = lift_on_chart(P, Q, fam.chart, /*require_analytic=*/false);
    if (delta_out) *delta_out = cyl.delta();
    double top = std::min(r_max, cyl.delta() * 0.9);

    auto displacement = [&](double r) -> std::optional<std::pair<double, double>> {
        try {
            PoincareResult p = poincare_map(cyl, r);
            return std::make_pair(p.pi - r, p.dpi - 1.0);
        } catch (const Error&) {
            return std::nullopt; // orbit left the chart before one full turn
        }
    };

    // geometric scan from small radii up; failures are kept because a
    // defined/undefined boundary inside the window marks a cycle too (the
    // orbit separating collapsing orbits from returning ones)
    double lo = top * std::pow(2.0, -14);
    double ratio = std::pow(top / lo, 1.0 / (grid - 1));
    struct Sample {
        double r;
        std::optional<std::pair<double, double>> d;
    };
    std::vector<Sample> samples;
    for (int i = 0; i < grid; ++i) {
        double r = lo * std::pow(ratio, i);
        samples.push_back({r, displacement(r)});
    }

    std::vector<CycleHit> hits;
    auto partner_check = [&](CycleHit& hit) {
        double rstar = hit.r;
        auto dneg = displacement(-rstar);
        auto dneg_lo = displacement(-rstar * 1.1);
        auto dneg_hi = displacement(-rstar * 0.9);
        hit.partner_seen = false;
        if (dneg && dneg_lo && dneg_hi)
            hit.partner_seen = dneg_lo->first * dneg_hi->first <= 0 ||
                               std::fabs(dneg->first) < 1e-9 * rstar;
        else if (!dneg && (!dneg_lo || !dneg_hi))
            hit.partner_seen = true; // mirrored survival boundary
        else if (dneg_lo && dneg_hi)
            hit.partner_seen = dneg_lo->first * dneg_hi->first <= 0;
    };

    for (size_t i = 1; i < samples.size(); ++i) {
        const Sample& A = samples[i - 1];
        const Sample& B = samples[i];

        if (A.d && B.d && A.d->first != 0.0 && A.d->first * B.d->first < 0.0) {
            // plain sign change: bisection on d
            double a = A.r, b = B.r, fa = A.d->first;
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (a + b);
                auto dm = displacement(mid);
                if (!dm) break;
                if (fa * dm->first <= 0)
                    b = mid;
                else {
                    a = mid;
                    fa = dm->first;
                }
            }
            double rstar = 0.5 * (a + b);
            auto dstar = displacement(rstar);
            if (!dstar) continue;
            CycleHit hit;
            hit.r = rstar;
            hit.dprime = dstar->second;
            hit.hyperbolic = std::fabs(dstar->second) >= 1e-6;
            partner_check(hit);
            hits.push_back(hit);
            continue;
        }

        // survival boundary: collapsing orbits below returning orbits with
        // d > 0, or contracting orbits (d < 0) below escaping ones
        bool lower_dead_cycle = !A.d && B.d && B.d->first > 0.0;
        bool upper_dead_cycle = A.d && !B.d && A.d->first < 0.0;
        if (!lower_dead_cycle && !upper_dead_cycle) continue;
        double a = A.r, b = B.r;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (a + b);
            bool alive = displacement(mid).has_value();
            if (alive == lower_dead_cycle)
                b = mid;
            else
                a = mid;
        }
        double rstar = lower_dead_cycle ? b : a; // the surviving side
        auto dstar = displacement(rstar);
        if (!dstar) continue;
        // the boundary orbit lands on r = 0 after one turn, so d is signed
        // there; when the outer grid sample has the opposite sign the true
        // fixed point sits between and a plain bisection pins it
        if (lower_dead_cycle && dstar->first < 0.0 && B.d->first > 0.0) {
            double aa = rstar, bb = B.r, fa = dstar->first;
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (aa + bb);
                auto dm = displacement(mid);
                if (!dm) { aa = mid; continue; }
                if (fa * dm->first <= 0)
                    bb = mid;
                else {
                    aa = mid;
                    fa = dm->first;
                }
            }
            rstar = 0.5 * (aa + bb);
            if (auto dd = displacement(rstar)) dstar = dd;
        } else if (upper_dead_cycle && dstar->first > 0.0 && A.d->first < 0.0) {
            double aa = A.r, bb = rstar, fa = A.d->first;
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (aa + bb);
                auto dm = displacement(mid);
                if (!dm) { bb = mid; continue; }
                if (fa * dm->first <= 0)
                    bb = mid;
                else {
                    aa = mid;
                    fa = dm->first;
                }
            }
            rstar = 0.5 * (aa + bb);
            if (auto dd = displacement(rstar)) dstar = dd;
        }
        CycleHit hit;
        hit.r = rstar;
        hit.dprime = dstar->second;
        hit.hyperbolic = std::fabs(dstar->second) >= 1e-6;
        hit.from_boundary = true;
        partner_check(hit);
        hits.push_back(hit);
    }

    for (size_t i = 1; i < hits.size(); ++i)
        if (hits[i].r <= hits[i - 1].r * ratio) {
            hits[i].cluster = true;
            hits[i - 1].cluster = true;
        }
    return hits;
}

std::vector<SweepRow> sweep(const PerturbationFamily& fam, const std::vector<double>& eps_grid,
                            double r_max) {
    std::vector<SweepRow> rows;
    int restricted_bound = fam.tag == FamilyTag::NilP1
                               ? (fam.m - 1) / 2
                               : (fam.tag == FamilyTag::DegP1 ? (fam.m - 1) / 2 : -1);
    for (double eps : eps_grid) {
        SweepRow row;
        row.eps = eps;
        try {
            double delta = 0;
            auto hits = count_limit_cycles(fam, eps, r_max, 160, &delta);
            row.count = static_cast<int>(hits.size());
            for (auto& h : hits) row.radii.push_back(h.r);
            if (restricted_bound >= 0 && row.count > restricted_bound) {
                row.exceeded_bound = true;
                row.note = "count exceeds the restricted-perturbation bound (numerical artifact?)";
            }
            for (double r : row.radii)
                if (4 * r > delta && row.note.empty())
                    row.note = "validity window below 4x the detected radius; shrink eps";
        } catch (const Error& e) {
            row.note = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

PerturbationFamily search_coefficients(PerturbationFamily fam, double eps, double r_max) {
    const int k = fam.k_or_L;
    if (k <= 0) return fam;
    PerturbationFamily best = fam;
    int best_count = -1;
    const double ladders[3] = {1.0, 4.0, 0.25};
    for (int signs = 0; signs < (1 << k); ++signs) {
        for (double ladder : ladders) {
            PerturbationFamily cand = fam;
            cand.coeffs.clear();
            double mag = 1.0;
            for (int i = 0; i < k; ++i, mag *= ladder)
                cand.coeffs.push_back(((signs >> i) & 1) ? -mag : mag);
            int count = 0;
            try {
                count = static_cast<int>(count_limit_cycles(cand, eps, r_max).size());
            } catch (const Error&) {
                continue;
            }
            if (count > best_count) {
                best_count = count;
                best = cand;
            }
        }
    }
    return best;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
    os << "eps,cycle_count,radii\n";
    char buf[64];
    for (auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%d", row.eps, row.count);
        os << buf;
        for (double r : row.radii) {
            std::snprintf(buf, sizeof buf, ",%.17g", r);
            os << buf;
        }
        os << "\n";
    }
}

} // namespace cyc
