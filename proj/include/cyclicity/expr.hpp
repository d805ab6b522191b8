#ifndef CYCLICITY_EXPR_HPP
#define CYCLICITY_EXPR_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cyclicity/poly2.hpp"
#include "cyclicity/rational.hpp"

namespace cyc {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Closed-form scalar expression: polynomials, rational powers, exp, and
// quotients (the latter only inside exp arguments, enforced by the parser).
struct Expr {
    enum class Kind { Const, VarX, VarY, Param, Sum, Prod, Pow, Exp, Div };

    Kind kind;
    Rational value;               // Const
    std::string name;             // Param
    std::vector<ExprPtr> kids;    // Sum/Prod: n-ary; Exp: 1; Pow: 1; Div: 2
    Rational expo;                // Pow
    bool base_nonneg = false;     // Pow with non-integer exponent: base provably >= 0

    static ExprPtr constant(Rational v);
    static ExprPtr var_x();
    static ExprPtr var_y();
    static ExprPtr param(std::string n);
    static ExprPtr sum(std::vector<ExprPtr> kids);
    static ExprPtr prod(std::vector<ExprPtr> kids);
    static ExprPtr pow(ExprPtr base, Rational e);
    static ExprPtr exp(ExprPtr arg);
    static ExprPtr div(ExprPtr num, ExprPtr den);
};

using Bindings = std::map<std::string, Rational>;

struct EvalResult {
    double v, dx, dy;
};

// Value and exact-rule partial derivatives at a point; throws DomainError on
// evaluation-domain violations (zero denominator, negative base under a
// non-integer power, singular gradient at a zero base).
EvalResult eval_and_grad(const ExprPtr& e, double x, double y, const Bindings& params);

// Flattens nested sums/products, folds constants, sorts children into a
// deterministic order, and marks provably nonnegative power bases.  No
// distribution or other CAS rewriting.
ExprPtr canonicalize(const ExprPtr& e);

// Minimal-parenthesis text in the input grammar.
std::string print_expr(const ExprPtr& e);

// Names of free parameters appearing in e, sorted.
std::vector<std::string> free_params(const ExprPtr& e);

// Exact conversion to a polynomial with the given parameter bindings;
// nullopt when e contains exp, quotients, or non-integer powers.
std::optional<Poly2> to_poly2(const ExprPtr& e, const Bindings& params);

// True when the expression contains a construct with a restricted evaluation
// domain (a quotient or a rational power whose base is not provably
// nonnegative).
bool has_restricted_domain(const ExprPtr& e);

// Structural equality after canonicalization of both sides.
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

} // namespace cyc

#endif
