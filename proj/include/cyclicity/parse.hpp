#ifndef CYCLICITY_PARSE_HPP
#define CYCLICITY_PARSE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclicity/expr.hpp"
#include "cyclicity/poly2.hpp"

namespace cyc {

// A parsed planar system x' = P, y' = Q with the origin validated singular.
struct ParsedSystem {
    ExprPtr px_ast, py_ast;      // canonical right-hand sides
    std::optional<Poly2> P, Q;   // exact polynomial forms (parameters substituted)
    Bindings params;             // bound parameter values
    std::vector<std::string> param_names; // free parameters found in the source
    std::string source;          // original text
    std::pair<long, long> span_x{-1, -1}, span_y{-1, -1}; // (offset, length) of each rhs

    bool polynomial() const { return P && Q; }
    // Canonical text; polynomial sides print through Poly2.
    std::string str() const;
};

struct ParsedExpression {
    ExprPtr ast;
    std::vector<std::string> params; // free parameter names, sorted
    bool restricted_domain;          // quotients or unproven rational-power bases
};

// Parses "x' = <expr>; y' = <expr>" with all free parameters bound;
// validates P(0,0) = Q(0,0) = 0.  Throws ParseError with a byte offset.
ParsedSystem parse_system(const std::string& text, const Bindings& params);

// Parses a single expression (inverse-integrating-factor candidates).
// `assume_nonneg_bases` is the caller's assertion that every rational-power
// base is nonnegative on the domain of interest; without it, bases must be
// provably nonnegative (sums of even powers) or the evaluation domain is
// recorded as restricted.
ParsedExpression parse_expression(const std::string& text, bool assume_nonneg_bases = false);

} // namespace cyc

#endif
