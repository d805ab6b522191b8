#include "cyclicity/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cyclicity/config.hpp"
#include "cyclicity/errors.hpp"
#include "cyclicity/ode.hpp"

namespace cyc {

PoincareResult poincare_map(const CylinderEquation& cyl, double r0) {
    const Config& cfg = Config::get();
    const double T = cyl.period();
    const double delta = cyl.delta();
    if (std::fabs(r0) >= delta)
        throw WindowExit("initial radius outside the validity window", 0.0);

    if (r0 == 0.0) {
        // invariant circle; Pi'(0) = exp(int F1) via the variational equation
        if (cyl.is_zero() || !cyl.analytic_at_zero()) return {0.0, 1.0};
        std::array<double, 1> w{1.0};
        auto rhs = [&](double th, const std::array<double, 1>& y, std::array<double, 1>& dy) {
            dy[0] = cyl.F1(th) * y[0];
        };
        dopri5<1>(rhs, 0.0, T, w, cfg.ode_abs, cfg.ode_rel);
        return {0.0, w[0]};
    }

    std::array<double, 2> y{r0, 1.0};
    auto rhs = [&](double th, const std::array<double, 2>& s, std::array<double, 2>& dy) {
        dy[0] = cyl.F(s[0], th);
        dy[1] = cyl.dF_dr(s[0], th) * s[1];
    };
    const int segments = 64;
    for (int k = 0; k < segments; ++k) {
        double t0 = T * k / segments, t1 = T * (k + 1) / segments;
        dopri5<2>(rhs, t0, t1, y, cfg.ode_abs, cfg.ode_rel);
        if (std::fabs(y[0]) >= delta)
            throw WindowExit("trajectory left the validity window", t1);
    }
    return {y[0], y[1]};
}

PoincareData displacement_profile(const CylinderEquation& cyl, double r_min, double r_max,
                                  int per_side) {
    const Config& cfg = Config::get();
    PoincareData out;
    out.tol_abs = cfg.ode_abs;
    out.tol_rel = cfg.ode_rel;
    if (!(0 < r_min && r_min < r_max) || per_side < 2)
        throw DomainError("bad displacement grid");

    double ratio = std::pow(r_max / r_min, 1.0 / (per_side - 1));
    for (int side = 0; side < 2; ++side) {
        double sgn = side == 0 ? 1.0 : -1.0;
        for (int k = 0; k < per_side; ++k) {
            double r = sgn * r_min * std::pow(ratio, k);
            try {
                PoincareResult p = poincare_map(cyl, r);
                out.r0.push_back(r);
                out.Pi.push_back(p.pi);
                out.dPi.push_back(p.dpi);
                out.d.push_back(p.pi - r);
            } catch (const WindowExit&) {
                ++out.skipped;
            }
        }
    }

    auto side_sign = [&](bool positive) -> char {
        double mx = 0;
        char sg = '0';
        for (size_t i = 0; i < out.r0.size(); ++i) {
            if ((out.r0[i] > 0) != positive) continue;
            double fl = 10 * (cfg.ode_abs + cfg.ode_rel * std::fabs(out.r0[i]));
            if (std::fabs(out.d[i]) > std::max(mx, fl)) {
                mx = std::fabs(out.d[i]);
                sg = out.d[i] > 0 ? '+' : '-';
            }
        }
        return sg;
    };
    out.sign_pos = side_sign(true);
    out.sign_neg = side_sign(false);
    return out;
}

std::pair<int, double> estimate_multiplicity(const CylinderEquation& cyl, PoincareData* data) {
    const Config& cfg = Config::get();
    PoincareData local;
    PoincareData& prof = data ? *data : local;
    if (prof.r0.empty()) {
        double rmax = std::min(cyl.delta() / 2, 0.35);
        // shrink until the largest radius survives a full turn
        for (int tries = 0; tries < 40; ++tries) {
            try {
                poincare_map(cyl, rmax);
                break;
            } catch (const WindowExit&) {
                rmax *= 0.5;
            }
        }
        prof = displacement_profile(cyl, rmax * std::pow(2.0, -12), rmax, 25);
    }

    // per-sample integrator noise floor
    auto floor_at = [&](double r) { return cfg.ode_abs + cfg.ode_rel * std::fabs(r); };
    bool all_noise = true;
    for (size_t i = 0; i < prof.r0.size(); ++i)
        if (std::fabs(prof.d[i]) >= 10 * floor_at(prof.r0[i])) all_noise = false;
    if (all_noise) {
        prof.center_like = true;
        prof.m_hat = 0;
        prof.note = "center-like: displacement below the noise floor";
        return {0, 0.0};
    }

    // asymptotic sub-grid: the smallest radii (r0 > 0) whose |d| clears the
    // noise floor
    std::vector<std::pair<double, double>> pts; // (log r, log |d|)
    double c_sign = 0;
    {
        std::vector<std::pair<double, double>> side; // (r, d)
        for (size_t i = 0; i < prof.r0.size(); ++i)
            if (prof.r0[i] > 0 && std::fabs(prof.d[i]) > 100 * floor_at(prof.r0[i]))
                side.emplace_back(prof.r0[i], prof.d[i]);
        std::sort(side.begin(), side.end());
        size_t take = std::min<size_t>(side.size(), 8);
        if (take < 3) throw Undecided("too few displacement samples above the noise floor");
        for (size_t i = 0; i < take; ++i) {
            pts.emplace_back(std::log(side[i].first), std::log(std::fabs(side[i].second)));
            c_sign = side[i].second > 0 ? 1.0 : -1.0;
        }
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double nn = static_cast<double>(pts.size());
    double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    prof.raw_slope = slope;

    int m = 0;
    bool snapped = false;
    if (cyl.chart().parity_law) {
        int parity = cyl.chart().kind == ChartKind::Polar ? 1 : cyl.chart().index % 2;
        int lo = static_cast<int>(std::floor(slope));
        int best = 0;
        double bestdist = 1e300;
        for (int cand = lo - 2; cand <= lo + 3; ++cand) {
            if (cand < 1 || (cand % 2) != (parity % 2)) continue;
            double dist = std::fabs(slope - cand);
            if (dist < bestdist) {
                bestdist = dist;
                best = cand;
            }
        }
        if (best >= 1 && bestdist <= 0.25) {
            m = best;
            snapped = true;
        }
    } else {
        int cand = static_cast<int>(std::lround(slope));
        if (cand >= 1 && std::fabs(slope - cand) <= 0.25) {
            m = cand;
            snapped = true;
        }
    }
    if (!snapped) {
        prof.note = "slope " + std::to_string(slope) + " is not near an admissible integer";
        prof.m_hat = 0;
        return {0, slope};
    }

    // intercept with the snapped slope
    double acc = 0;
    for (auto& [x, y] : pts) acc += y - m * x;
    double c_hat = c_sign * std::exp(acc / nn);

    prof.m_hat = m;
    prof.c_hat = c_hat;
    prof.snapped = true;
    return {m, c_hat};
}

double characteristic_exponent(const CylinderEquation& cyl) {
    if (cyl.is_zero()) return 0.0;
    const double T = cyl.period();
    double h = std::min(cyl.delta() / 8, 0.05);
    const int M = 4096;
    double acc = 0;
    for (int i = 0; i < M; ++i) {
        double th = T * i / M;
        double d1 = (cyl.F(h, th) - cyl.F(-h, th)) / (2 * h);
        double d2 = (cyl.F(h / 2, th) - cyl.F(-h / 2, th)) / h;
        acc += (4 * d2 - d1) / 3;
    }
    return acc * T / M;
}

void write_profile_csv(const PoincareData& data, std::ostream& os) {
    os << "r0,Pi,dPi,d\n";
    char buf[512];
    for (size_t i = 0; i < data.r0.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", data.r0[i], data.Pi[i],
                      data.dPi[i], data.d[i]);
        os << buf;
    }
}

} // namespace cyc
