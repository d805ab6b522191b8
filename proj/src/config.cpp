#include "cyclicity/config.hpp"

#include <cstdlib>
#include <string>

namespace cyc {

const Config& Config::get() {
    static const Config cfg = [] {
        Config c;
        if (const char* s = std::getenv("CYCLICITY_ODE_TOL")) {
            try {
                double t = std::stod(s);
                if (t > 0) {
                    c.ode_abs = t;
                    c.ode_rel = t;
                    c.gentrig_tol = t;
                }
            } catch (...) {
                // ignore malformed values, keep defaults
            }
        }
        return c;
    }();
    return cfg;
}

} // namespace cyc
