#ifndef CYCLICITY_CYLINDER_HPP
#define CYCLICITY_CYLINDER_HPP

#include <utility>
#include <vector>

#include "cyclicity/gentrig.hpp"
#include "cyclicity/monodromy.hpp"
#include "cyclicity/parse.hpp"
#include "cyclicity/poly2.hpp"

namespace cyc {

// Sum of c * r^rp * Cs^cs(theta) * Sn^sn(theta) terms; the exact-exponent
// carrier for everything on the cylinder.
struct TrigTerm {
    double c;
    int rp, cs, sn;
};

struct TrigSum {
    std::vector<TrigTerm> terms;

    void add(double c, int rp, int cs, int sn);
    bool empty() const { return terms.empty(); }
    int min_rpow() const;
    void shift_rpow(int s);
    void prune(double rel_tol = 1e-15);
    // theta -> -theta (Cs even, Sn odd), optionally negating the whole sum
    TrigSum reflected(bool negate) const;

    double eval(double r, double csv, double snv) const;
    double eval_dr(double r, double csv, double snv) const;  // d/dr
    double eval_r0(double csv, double snv) const;            // rp == 0 terms only
    // bound on |d/dtheta| of the rp==0 part, from term-wise coefficients
    double angular_lipschitz() const;
};

enum class ChartKind { Polar, GenPolar };

struct Chart {
    ChartKind kind;
    int index;       // d for Polar, n for GenPolar
    bool parity_law; // multiplicity parity of the origin is known for this chart
};

// dr/dtheta = r^lead * N(r,theta)/D(r,theta) over the cylinder, with chart
// metadata, validity window, and certified leading angular coefficient.
// Immutable once built; evaluations are pure.
class CylinderEquation {
public:
    double F(double r, double theta) const;
    double dF_dr(double r, double theta) const;
    // Analytic linear coefficient of F at r = 0 (zero when lead >= 2).
    double F1(double theta) const;
    // Leading angular speed coefficient: F_d(theta) in polar charts,
    // Theta_{n-1}(theta) in generalized polar charts (orientation-normalized).
    double theta_lead(double theta) const;

    const Chart& chart() const { return chart_; }
    double period() const { return period_; }
    double delta() const { return delta_; }
    bool is_zero() const { return zero_; }
    bool analytic_at_zero() const { return zero_ || lead_ >= 1; }
    int lead_power() const { return lead_; }
    bool orientation_flipped() const { return flipped_; }
    // r-power of the full angular speed: thetadot = r^den_shift * D(r,theta)
    int den_shift() const { return den_shift_; }
    const TrigSum& den() const { return den_; }
    double den_floor() const { return den_floor_; }

    std::pair<double, double> trig(double theta) const; // (Cs, Sn) backend
    std::pair<double, double> to_cartesian(double r, double theta) const;

private:
    friend CylinderEquation lift_on_chart(const DPoly2& P, const DPoly2& Q, Chart chart,
                                          bool require_analytic);
    Chart chart_{ChartKind::Polar, 1, true};
    double period_ = 0;
    int lead_ = 0, den_shift_ = 0;
    TrigSum num_, den_;
    bool zero_ = false, flipped_ = false;
    double delta_ = 0, den_floor_ = 0;
    const GenTrigTable* trig_ = nullptr; // GenPolar only
};

// Core lift of a (numeric) polynomial field on a fixed chart.  Certifies the
// leading angular coefficient nonvanishing (grid + Lipschitz bound) and
// normalizes the orientation so it is positive.
CylinderEquation lift_on_chart(const DPoly2& P, const DPoly2& Q, Chart chart,
                               bool require_analytic);

// Polar chart for a system in the degenerate-without-characteristic-
// directions class (d = 1 covers the non-degenerate focus).
CylinderEquation polar_lift(const ParsedSystem& sys, int d);

// Generalized polar chart for a normalized nilpotent system.
CylinderEquation genpolar_lift(const NormalizedSystem& ns);

// Direct quasihomogeneous lift: requires the lowest (1,n_tilde)-weighted
// degrees a of P and b of Q to satisfy a-1 = b-n_tilde >= 0 and the leading
// angular form to be certified nonvanishing.  `parity_known` should be set
// when n_tilde agrees with the Andreev number of a classified nilpotent
// point.
CylinderEquation direct_lift(const ParsedSystem& sys, int n_tilde, bool parity_known = false);

} // namespace cyc

#endif
