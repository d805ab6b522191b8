#ifndef CYCLICITY_BIFURCATION_HPP
#define CYCLICITY_BIFURCATION_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cyclicity/cylinder.hpp"
#include "cyclicity/monodromy.hpp"
#include "cyclicity/parse.hpp"

namespace cyc {

enum class FamilyTag { DegP1, DegP2, NilP1, NilP2, PresetEx3 };

// An explicit one-parameter perturbation of a base system:
//   DegP1:  (P + x K, Q + y K),    K = sum eps^(k-i) a_i (x^2+y^2)^(i+(d-1)/2)
//   DegP2:  same shape with Kbar = sum eps^(L-i) b_i (x^2+y^2)^i
//   NilP1:  (P + x K, Q + n y K),  K = sum eps^(k-i) a_i x^(n-1+2i)  (n odd)
//                                  K = sum eps^(k-i) a_i x^(n+2i)    (n even)
//   NilP2:  same shape with Kbar = sum eps^(L-i) b_i x^(2i)
//   PresetEx3: the cubic homogeneous focus with its explicit linear
//              perturbation carrying the invariant circle x^2+y^2 = eps.
struct PerturbationFamily {
    FamilyTag tag;
    DPoly2 Pbase, Qbase;
    Chart chart;           // chart the perturbed systems are lifted on
    int d_or_n = 1;
    int m = 0;             // supplied vanishing multiplicity of the base
    int k_or_L = 0;        // number of perturbation terms
    std::vector<double> coeffs; // a_i or b_i
    double eps_max = 1e-2;

    // perturbed field at a given eps
    std::pair<DPoly2, DPoly2> at(double eps) const;
};

// Coefficient defaults follow the alternating-stability construction:
// a_i = (-1)^i unless overridden.
PerturbationFamily build_family(FamilyTag tag, const ParsedSystem& base, int m,
                                const std::vector<double>& coeffs = {});
PerturbationFamily build_family_nilpotent(FamilyTag tag, const NormalizedSystem& base, int m,
                                          const std::vector<double>& coeffs = {});

struct CycleHit {
    double r;          // fixed-point radius, r > 0
    double dprime;     // displacement derivative at the cycle
    bool hyperbolic;   // |d'| >= 1e-6
    bool partner_seen; // a symmetric partner was detected at negative radius
    bool cluster = false;       // another zero within one grid cell
    bool from_boundary = false; // found as a survival boundary, not a sign change
};

// Isolated zeros of the displacement on (0, r_max]: sign-change scan on a
// geometric grid plus bisection refinement; defined/undefined boundaries
// are treated as cycles when the surviving side separates.  Throws
// LiftError when the perturbed system cannot be lifted on the family
// chart.  `delta_out` receives the chart validity window when non-null.
std::vector<CycleHit> count_limit_cycles(const PerturbationFamily& fam, double eps,
                                         double r_max, int grid = 160,
                                         double* delta_out = nullptr);

struct SweepRow {
    double eps;
    int count = 0;
    std::vector<double> radii;
    bool exceeded_bound = false; // count above the restricted-perturbation bound
    std::string note;
};

std::vector<SweepRow> sweep(const PerturbationFamily& fam, const std::vector<double>& eps_grid,
                            double r_max = 0.5);

// Small search over coefficient sign patterns and magnitude ladders for the
// demonstration runs; returns the family whose cycle count at `eps` is
// largest (ties keep the simplest pattern).  Honest about failure: the
// returned family may still attain fewer than the theoretical count.
PerturbationFamily search_coefficients(PerturbationFamily fam, double eps, double r_max = 0.5);

// CSV rows (eps, cycle_count, radii...), headers included.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os);

} // namespace cyc

#endif
