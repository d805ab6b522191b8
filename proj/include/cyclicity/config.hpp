#ifndef CYCLICITY_CONFIG_HPP
#define CYCLICITY_CONFIG_HPP

namespace cyc {

// Integrator tolerances.  CYCLICITY_ODE_TOL in the environment overrides
// all three (read once at first use).
struct Config {
    double ode_abs = 1e-12;
    double ode_rel = 1e-10;
    double gentrig_tol = 1e-13;

    static const Config& get();
};

} // namespace cyc

#endif
