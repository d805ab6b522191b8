#ifndef CYCLICITY_IIF_HPP
#define CYCLICITY_IIF_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cyclicity/cylinder.hpp"
#include "cyclicity/dynamics.hpp"
#include "cyclicity/expr.hpp"
#include "cyclicity/parse.hpp"
#include "cyclicity/poly2.hpp"

namespace cyc {

// Inverse-integrating-factor candidate V0 for a planar system.
struct IIFCandidate {
    ExprPtr ast;                 // always present (canonical)
    std::optional<Poly2> poly;   // exact form when V0 is polynomial
    Bindings params;
    bool restricted_domain = false;

    static IIFCandidate from_text(const std::string& text, const Bindings& params,
                                  bool assume_nonneg_bases = false);
};

struct PdeReport {
    bool symbolic = false;
    bool exact_zero = false;       // symbolic mode
    double max_rel_residual = 0;   // numeric mode: max |res| / (1 + |V0|)
    std::string residual_str;      // symbolic mode: canonical residual polynomial
};

enum class PdeMode { Symbolic, Numeric };

// P V0_x + Q V0_y - (P_x + Q_y) V0, exactly (polynomial data) or sampled on
// an annulus avoiding the origin.
PdeReport verify_iif_pde(const IIFCandidate& v0, const ParsedSystem& sys, PdeMode mode);

// V0 lifted against a chart:  V = V0(x(r,theta), y(r,theta)) / (J * thetadot)
// with J the chart Jacobian (r or r^n).  When V0 is polynomial the lifted
// numerator is carried with exact exponents, enabling the symbolic
// multiplicity read-off.
struct LiftedIIF {
    const CylinderEquation* cyl = nullptr;
    std::function<double(double, double)> V; // (r, theta), 0 < |r| < delta
    std::optional<TrigSum> numer;            // exact-exponent numerator (polynomial V0)
    int div_exp = 0;                         // V = numer / (r^div_exp * D(r,theta))
    bool symbolic = false;
};

LiftedIIF lift_iif(const IIFCandidate& v0, const CylinderEquation& cyl);

struct VanishingMultiplicity {
    int m = 0;
    bool symbolic = false;        // read off from exact exponents
    double slope = 0;             // numeric route: fitted slope
    std::vector<double> theta;    // sample angles
    std::vector<double> vm;       // v_m(theta) samples
    std::string note;
};

// Leading exponent of V in r at r = 0 and samples of its angular
// coefficient; throws Undecided when slopes are theta-dependent (no Laurent
// leading term).
VanishingMultiplicity vanishing_multiplicity(const LiftedIIF& lifted, int theta_samples = 16);

// Max relative residual of V(Pi(r0), T) - V(r0, 0) * Pi'(r0) over the grid.
double check_poincare_identity(const LiftedIIF& lifted, const PoincareData& grid);

struct VmConsistency {
    double max_ode_residual = 0;    // v_m' - (1-m) F1 v_m on a periodic grid
    double max_closed_form_dev = 0; // against v_m(0) * exp((1-m) int F1)
};

VmConsistency v_m_consistency(const LiftedIIF& lifted, const VanishingMultiplicity& vm);

// Cyclicity verdict from the vanishing multiplicity and the chart.
struct CyclicityVerdict {
    enum class Kind { Center, Focus, CenterLike, Abstained, Inconsistent } kind;
    int m = 0;
    int lower_bound = -1;      // Focus: cyclicity lower bound
    int restricted_count = -1; // Focus: exact count for restricted perturbations
    bool exact = false;        // Focus on a non-degenerate chart: bound is sharp
    std::string clause;        // the rule applied, by content
};

// `m_hat` is the dynamics evidence (0 with center_like set when the
// displacement is below the noise floor).  `analytic_v0` enables the
// odd-Andreev-number consistency rule for polynomial candidates on
// generalized polar charts.
CyclicityVerdict classify_and_bound(int m, const Chart& chart,
                                    std::optional<int> m_hat, bool center_like_evidence,
                                    bool analytic_v0);

} // namespace cyc

#endif
