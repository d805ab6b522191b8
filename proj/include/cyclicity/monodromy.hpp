#ifndef CYCLICITY_MONODROMY_HPP
#define CYCLICITY_MONODROMY_HPP

#include <optional>
#include <string>
#include <vector>

#include "cyclicity/parse.hpp"
#include "cyclicity/poly2.hpp"
#include "cyclicity/series.hpp"

namespace cyc {

// Real linear factors of x*q_d - y*p_d.
struct CharDirections {
    enum class Kind { IdenticallyZero, None, Some } kind;
    std::vector<double> slopes; // directions y = slope*x
    bool vertical = false;      // the x = 0 direction
    int real_root_count = 0;    // Sturm count (certifies "none" when 0 and no vertical)
};

CharDirections characteristic_directions(const Poly2& p_d, const Poly2& q_d);

// Andreev data for a nilpotent singular point in the frame
// x' = y + P2(x,y), y' = Q2(x,y).
struct MonodromyReport {
    PowerSeries1 F, f, phi;            // pre-normalization triple
    Rational a;                        // leading coefficient of f
    int alpha = 0;                     // leading exponent of f
    std::optional<Rational> b;         // leading coefficient of phi, if any below truncation
    std::optional<int> beta;
    int monodromy_case = 0;            // 1, 2, 3; 0 = not monodromic
    bool monodromic = false;
    int n = 0;                         // Andreev number (alpha = 2n-1)
    double xi = 1.0;                   // scaling (-1/a)^(1/(2-2n))
    int trunc_order = 0;
    std::string note;
};

struct SingularityClass {
    enum class Tag { NonDegenerateFocusCandidate, DegenerateNoCharDir, Nilpotent,
                     NotMonodromicOrUnknown } tag;
    int d = 1;                           // lowest homogeneous degree (polar charts)
    std::optional<MonodromyReport> andreev;
    double min_Fd = 0.0;                 // certified min |F_d| on the circle
    std::string diagnostics;
};

// Linear-part taxonomy plus the degenerate/nilpotent paths; requires a
// polynomial system.
SingularityClass classify_singularity(const ParsedSystem& sys);

// Andreev analysis of a system already in the nilpotent frame.  Raises the
// truncation order and retries once when the leading term of f is not
// visible; throws Undecided if it still is not.
MonodromyReport andreev_analyze(const Poly2& P2, const Poly2& Q2, int order = 0);

// Nilpotent normal form: the transformed system after (x,y) -> (x, y-F(x))
// and (x,y) -> (xi*x, -xi*y).  Coefficients are numeric at this boundary
// (xi may be irrational); truncated at (1,n)-weighted degree trunc_w.
struct NormalizedSystem {
    DPoly2 P, Q;
    int n = 0;
    double xi = 1.0;
    int trunc_w = 0;
    MonodromyReport report;
    // relabelled (post-normalization) triple: f = x^(2n-1) + ..., phi, b
    std::vector<double> f_post, phi_post;
    std::optional<double> b_post;
};

NormalizedSystem normalize_nilpotent(const ParsedSystem& sys, const MonodromyReport& report);

// Brings a system whose linear part is nonzero nilpotent to the frame
// x' = y + O(2), y' = O(2) by an exact linear change of variables.
std::pair<Poly2, Poly2> nilpotent_frame(const Poly2& P, const Poly2& Q);

} // namespace cyc

#endif
