#ifndef CYCLICITY_DYNAMICS_HPP
#define CYCLICITY_DYNAMICS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cyclicity/cylinder.hpp"

namespace cyc {

struct PoincareResult {
    double pi;  // Pi(r0)
    double dpi; // Pi'(r0) from the variational equation
};

// One full turn of dr/dtheta = F(r,theta); throws WindowExit when the
// trajectory leaves |r| < delta before theta = T.
PoincareResult poincare_map(const CylinderEquation& cyl, double r0);

struct PoincareData {
    std::vector<double> r0, Pi, dPi, d; // valid samples, both signs of r0
    double tol_abs = 0, tol_rel = 0;
    int skipped = 0;                    // samples that left the window
    // displacement sign pattern on the two sides: '+', '-', '0', or '?'
    char sign_pos = '?', sign_neg = '?';

    // filled by estimate_multiplicity
    int m_hat = 0;
    double c_hat = 0;
    bool center_like = false;
    double raw_slope = 0;
    bool snapped = false;
    std::string note;
};

// Geometric grid on both sides of r = 0; per-sample failures are skipped
// and counted.
PoincareData displacement_profile(const CylinderEquation& cyl, double r_min, double r_max,
                                  int per_side);

// Multiplicity of the limit cycle r = 0 from the asymptotic slope of
// log|d| vs log r0, snapped to the parity admissible on the chart; the
// leading displacement coefficient comes from the intercept.  Uses (and
// fills) a default profile when none is supplied.
std::pair<int, double> estimate_multiplicity(const CylinderEquation& cyl,
                                             PoincareData* data = nullptr);

// integral over one period of F1(theta) = dF/dr(0,theta), computed by
// central differences with Richardson extrapolation and trapezoid
// quadrature on the periodic grid.
double characteristic_exponent(const CylinderEquation& cyl);

// CSV rows (r0, Pi, dPi, d), headers included.
void write_profile_csv(const PoincareData& data, std::ostream& os);

} // namespace cyc

#endif
