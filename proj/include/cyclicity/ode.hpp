#ifndef CYCLICITY_ODE_HPP
#define CYCLICITY_ODE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "cyclicity/errors.hpp"

namespace cyc {

// Dormand-Prince 5(4) embedded pair with adaptive step control.
// RHS signature: f(t, const std::array<double,N>& y, std::array<double,N>& dy).
template <std::size_t N, class F>
void dopri5(F&& f, double t0, double t1, std::array<double, N>& y,
            double abs_tol, double rel_tol, std::size_t max_steps = 2'000'000) {
    if (t0 == t1) return;
    const double dir = t1 > t0 ? 1.0 : -1.0;

    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    std::array<double, N> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
    double t = t0;
    double h = dir * std::min(std::fabs(t1 - t0) / 10.0, 0.1);
    f(t, y, k1);

    for (std::size_t step = 0; step < max_steps; ++step) {
        if (dir * (t + h - t1) > 0) h = t1 - t;

        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        f(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f(t + h, ytmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(t + h, ynew, k7);

        double err = 0;
        for (std::size_t i = 0; i < N; ++i) {
            double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            double sc = abs_tol + rel_tol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
            double q = ei / sc;
            err += q * q;
        }
        err = std::sqrt(err / N);

        if (err <= 1.0 || std::fabs(h) <= 1e-14 * (1 + std::fabs(t))) {
            t += h;
            y = ynew;
            k1 = k7; // FSAL
            if (dir * (t - t1) >= 0 || t == t1) return;
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::clamp(fac, 0.2, 5.0);
    }
    throw Error("integrator exceeded the step budget");
}

} // namespace cyc

#endif
