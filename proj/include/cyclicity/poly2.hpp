#ifndef CYCLICITY_POLY2_HPP
#define CYCLICITY_POLY2_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cyclicity/rational.hpp"

namespace cyc {

// Exact bivariate polynomial with rational coefficients.  Terms are kept in
// a map from exponent pairs (i,j) -> coefficient with no stored zeros.
class Poly2 {
public:
    using Key = std::pair<int, int>;
    using Terms = std::map<Key, Rational>;

    Poly2() = default;
    static Poly2 constant(Rational c);
    static Poly2 monomial(int i, int j, Rational c);
    static Poly2 var_x() { return monomial(1, 0, Rational(1)); }
    static Poly2 var_y() { return monomial(0, 1, Rational(1)); }

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    Rational coeff(int i, int j) const;
    void set_coeff(int i, int j, Rational c);

    int total_degree() const;  // -1 for the zero polynomial
    int lowest_degree() const; // -1 for the zero polynomial
    Poly2 homogeneous_part(int d) const;
    bool is_homogeneous(int d) const;

    Poly2& operator+=(const Poly2& o);
    Poly2& operator-=(const Poly2& o);
    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
    friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
    Poly2 operator-() const;
    friend Poly2 operator*(const Poly2& a, const Poly2& b);
    Poly2& operator*=(const Poly2& o) { *this = *this * o; return *this; }
    Poly2 scaled(const Rational& c) const;
    Poly2 pow(int e) const;
    friend bool operator==(const Poly2& a, const Poly2& b) { return a.t_ == b.t_; }

    Poly2 dx() const;
    Poly2 dy() const;

    // p(a*u + b*v, c*u + d*v) expanded exactly.
    Poly2 subst_linear(const Rational& a, const Rational& b,
                       const Rational& c, const Rational& d) const;

    Rational eval(const Rational& x, const Rational& y) const;
    double eval_d(double x, double y) const;

    // Canonical text form, e.g. "-y + x^3 + 1/2*x*y^2"; terms ordered by
    // ascending total degree, then descending x-exponent.
    std::string str() const;

private:
    Terms t_;
};

// Same layout with double coefficients; numeric boundary of the nilpotent
// path and of perturbation families.
class DPoly2 {
public:
    using Key = std::pair<int, int>;
    using Terms = std::map<Key, double>;

    DPoly2() = default;
    explicit DPoly2(const Poly2& p);

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    void add_term(int i, int j, double c);
    double coeff(int i, int j) const;

    DPoly2& operator+=(const DPoly2& o);
    friend DPoly2 operator*(const DPoly2& a, const DPoly2& b);
    DPoly2 scaled(double c) const;
    double eval(double x, double y) const;
    DPoly2 dx() const;
    DPoly2 dy() const;

    // Drop terms with |coeff| below `tol` times the largest magnitude.
    void prune(double tol = 1e-14);

private:
    Terms t_;
};

// Parts of p grouped by (1,n)-weighted degree w = i + n*j, ascending;
// the parts sum to p and each is quasihomogeneous of its stated w.
std::vector<std::pair<int, Poly2>> quasihomogeneous_decompose(const Poly2& p, int n);

// True iff x*R_x + n*y*R_y == w*R exactly.
bool euler_check(const Poly2& R, int n, int w);

// Lowest (1,n)-weighted degree present; -1 for the zero polynomial.
int lowest_weighted_degree(const Poly2& p, int n);

} // namespace cyc

#endif
