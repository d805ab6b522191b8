#ifndef CYCLICITY_RATIONAL_HPP
#define CYCLICITY_RATIONAL_HPP

#include <gmp.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace cyc {

// Exact rational scalar.  Thin RAII wrapper over GMP's mpq_t; values are
// always kept canonical (coprime, positive denominator).
class Rational {
public:
    Rational() { mpq_init(q_); }
    Rational(long n) { mpq_init(q_); mpq_set_si(q_, n, 1); }
    Rational(long num, long den);
    Rational(const Rational& o) { mpq_init(q_); mpq_set(q_, o.q_); }
    Rational(Rational&& o) noexcept { mpq_init(q_); mpq_swap(q_, o.q_); }
    ~Rational() { mpq_clear(q_); }

    Rational& operator=(const Rational& o) { if (this != &o) mpq_set(q_, o.q_); return *this; }
    Rational& operator=(Rational&& o) noexcept { if (this != &o) mpq_swap(q_, o.q_); return *this; }

    // Accepts "123", "-4/5"; throws ParseError on malformed input or zero
    // denominator.
    static Rational from_string(const std::string& s);

    Rational& operator+=(const Rational& o) { mpq_add(q_, q_, o.q_); return *this; }
    Rational& operator-=(const Rational& o) { mpq_sub(q_, q_, o.q_); return *this; }
    Rational& operator*=(const Rational& o) { mpq_mul(q_, q_, o.q_); return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { Rational r; mpq_neg(r.q_, q_); return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = mpq_cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_one() const { return mpq_cmp_si(q_, 1, 1) == 0; }
    bool is_integer() const { return mpz_cmp_si(mpq_denref(q_), 1) == 0; }

    // Valid only when is_integer() and the value fits in a long.
    long to_long() const { return mpz_get_si(mpq_numref(q_)); }
    bool fits_long() const { return is_integer() && mpz_fits_slong_p(mpq_numref(q_)); }

    double to_double() const { return mpq_get_d(q_); }
    Rational abs() const { Rational r; mpq_abs(r.q_, q_); return r; }
    Rational inverse() const;
    Rational pow(long e) const; // integer power; e < 0 requires nonzero value

    // Canonical text: "p" when the denominator is 1, else "p/q".
    std::string str() const;

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_t q_;
};

} // namespace cyc

#endif
