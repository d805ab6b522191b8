#include "cyclicity/gentrig.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "cyclicity/config.hpp"
#include "cyclicity/errors.hpp"
#include "cyclicity/ode.hpp"

namespace cyc {

double gamma_fn(double x) {
    // Lanczos, g = 7, 9 coefficients.
    static const double g = 7;
    static const double coef[9] = {
        0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
        771.32342877765313,    -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // reflection
        return M_PI / (std::sin(M_PI * x) * gamma_fn(1.0 - x));
    }
    x -= 1.0;
    double a = coef[0];
    double t = x + g + 0.5;
    for (int i = 1; i < 9; ++i) a += coef[i] / (x + i);
    return std::sqrt(2.0 * M_PI) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

namespace {

constexpr int kCells = 4096;

// Quintic Hermite on [0,1] from values and first/second derivatives at both
// ends (derivatives pre-scaled by h and h^2).
inline double quintic(double f0, double d0, double s0, double f1, double d1, double s1, double u) {
    double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
    double H0 = 1 - 10 * u3 + 15 * u4 - 6 * u5;
    double H1 = u - 6 * u3 + 8 * u4 - 3 * u5;
    double H2 = 0.5 * (u2 - 3 * u3 + 3 * u4 - u5);
    double H3 = 10 * u3 - 15 * u4 + 6 * u5;
    double H4 = -4 * u3 + 7 * u4 - 3 * u5;
    double H5 = 0.5 * (u3 - 2 * u4 + u5);
    return f0 * H0 + d0 * H1 + s0 * H2 + f1 * H3 + d1 * H4 + s1 * H5;
}

} // namespace

GenTrigTable::GenTrigTable(int n, double tol) : n_(n), tol_(tol) {
    if (n < 1) throw DomainError("generalized trig index must be >= 1");
    const double e = 2 * n - 1;
    period_ = 2.0 * std::sqrt(M_PI / n) * gamma_fn(1.0 / (2.0 * n)) /
              gamma_fn((n + 1.0) / (2.0 * n));

    auto rhs = [e](double, const std::array<double, 2>& y, std::array<double, 2>& dy) {
        dy[0] = -y[1];
        dy[1] = std::pow(y[0], e);
    };

    h_ = period_ / kCells;
    cs_.resize(kCells + 1);
    sn_.resize(kCells + 1);
    dcs_.resize(kCells + 1);
    dsn_.resize(kCells + 1);
    d2cs_.resize(kCells + 1);
    d2sn_.resize(kCells + 1);

    std::array<double, 2> y{1.0, 0.0};
    for (int i = 0; i <= kCells; ++i) {
        if (i > 0) dopri5<2>(rhs, (i - 1) * h_, i * h_, y, tol_, tol_);
        cs_[i] = y[0];
        sn_[i] = y[1];
        dcs_[i] = -y[1];
        dsn_[i] = std::pow(y[0], e);
        d2cs_[i] = -dsn_[i];
        d2sn_[i] = e * std::pow(y[0], e - 1) * dcs_[i];
    }

    // First-return time to (1,0) from an independent one-shot adaptive pass
    // at the configured tolerance, then Newton on Sn(t) = 0 near the formula
    // period using dSn/dt = Cs^(2n-1).  A loosened tolerance degrades this
    // pass and trips the cross-check below.
    double t_ret = period_;
    std::array<double, 2> z{1.0, 0.0};
    dopri5<2>(rhs, 0.0, period_, z, tol_, tol_);
    for (int it = 0; it < 8; ++it) {
        double slope = std::pow(z[0], e);
        if (slope == 0) break;
        double dt = -z[1] / slope;
        if (std::fabs(dt) < 1e-16) { t_ret += dt; break; }
        dopri5<2>(rhs, t_ret, t_ret + dt, z, tol_, tol_);
        t_ret += dt;
    }
    return_time_ = t_ret;
    if (std::fabs(return_time_ - period_) > 1e-8)
        throw Error("generalized trig period mismatch: Gamma formula " +
                    std::to_string(period_) + " vs return time " + std::to_string(return_time_) +
                    " (integrator misconfiguration?)");
}

std::pair<double, double> GenTrigTable::eval(double theta) const {
    double t = theta - period_ * std::floor(theta / period_);
    if (t >= period_) t -= period_;
    double pos = t / h_;
    int i = static_cast<int>(pos);
    if (i >= kCells) i = kCells - 1;
    double u = pos - i;
    double c = quintic(cs_[i], h_ * dcs_[i], h_ * h_ * d2cs_[i], cs_[i + 1], h_ * dcs_[i + 1],
                       h_ * h_ * d2cs_[i + 1], u);
    double s = quintic(sn_[i], h_ * dsn_[i], h_ * h_ * d2sn_[i], sn_[i + 1], h_ * dsn_[i + 1],
                       h_ * h_ * d2sn_[i + 1], u);
    return {c, s};
}

const GenTrigTable& GenTrigTable::get(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GenTrigTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        auto tab = std::unique_ptr<GenTrigTable>(new GenTrigTable(n, Config::get().gentrig_tol));
        it = cache.emplace(n, std::move(tab)).first;
    }
    return *it->second;
}

double period_tn(int n) {
    const GenTrigTable& t = GenTrigTable::get(n);
    return t.period();
}

} // namespace cyc
