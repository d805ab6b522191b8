#ifndef CYCLICITY_UNIVAR_HPP
#define CYCLICITY_UNIVAR_HPP

#include <utility>
#include <vector>

#include "cyclicity/rational.hpp"

namespace cyc {

// Dense univariate polynomial with rational coefficients, used for the
// Sturm-sequence certification of characteristic directions.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs); // c[k] multiplies t^k

    const std::vector<Rational>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 if zero
    bool is_zero() const { return c_.empty(); }
    Rational leading() const;
    Rational eval(const Rational& t) const;

    RatPoly derivative() const;
    friend RatPoly operator-(const RatPoly& a);
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
    RatPoly scaled(const Rational& s) const;
    // Euclidean remainder; exact rational arithmetic.
    static RatPoly rem(const RatPoly& a, const RatPoly& b);
    static RatPoly gcd(const RatPoly& a, const RatPoly& b);
    RatPoly squarefree_part() const;

private:
    void trim();
    std::vector<Rational> c_;
};

// Number of distinct real roots of p (counted without multiplicity) via a
// Sturm chain of the squarefree part.
int sturm_real_root_count(const RatPoly& p);

// Distinct real roots isolated by Sturm bisection and refined to double
// precision; sorted ascending.
std::vector<double> isolate_real_roots(const RatPoly& p);

} // namespace cyc

#endif
