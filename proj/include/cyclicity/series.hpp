#ifndef CYCLICITY_SERIES_HPP
#define CYCLICITY_SERIES_HPP

#include <optional>
#include <utility>
#include <vector>

#include "cyclicity/poly2.hpp"
#include "cyclicity/rational.hpp"

namespace cyc {

// Univariate power series with rational coefficients, truncated at a fixed
// order N (coefficients of x^0 .. x^N).
class PowerSeries1 {
public:
    PowerSeries1() : c_(1, Rational(0)) {}
    explicit PowerSeries1(int order) : c_(order + 1, Rational(0)) {}
    PowerSeries1(int order, std::vector<Rational> coeffs);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& coeff(int k) const { return c_[k]; }
    void set_coeff(int k, Rational v) { c_[k] = std::move(v); }
    bool is_zero() const;

    PowerSeries1 truncated(int order) const;
    PowerSeries1& operator+=(const PowerSeries1& o);
    friend PowerSeries1 operator+(PowerSeries1 a, const PowerSeries1& b) { return a += b; }
    PowerSeries1 operator-() const;
    friend PowerSeries1 operator-(PowerSeries1 a, const PowerSeries1& b) { return a += -b; }
    friend PowerSeries1 operator*(const PowerSeries1& a, const PowerSeries1& b);
    PowerSeries1 scaled(const Rational& s) const;
    PowerSeries1 derivative() const;
    friend bool operator==(const PowerSeries1& a, const PowerSeries1& b);

    // Substitute this series into `inner` position: self(inner(x)); requires
    // inner(0) = 0.
    PowerSeries1 compose(const PowerSeries1& inner) const;

    // (exponent, coefficient) of the first nonzero term, if any.
    std::optional<std::pair<int, Rational>> leading() const;

    double eval_d(double x) const;

private:
    std::vector<Rational> c_;
};

// Substitute y = s(x) into p(x,y), truncating at the order of s.
PowerSeries1 substitute_y(const Poly2& p, const PowerSeries1& s);

// The series y = F(x) with F(0) = F'(0) = 0 solving y + P2(x,y) = 0 through
// order N, by fixed-point iteration; P2 must have no constant or linear
// terms and N >= 2.
PowerSeries1 series_solve_implicit(const Poly2& P2, int N);

} // namespace cyc

#endif
