#include "cyclicity/rational.hpp"

#include <ostream>

#include "cyclicity/errors.hpp"

namespace cyc {

Rational::Rational(long num, long den) {
    mpq_init(q_);
    if (den == 0) throw DomainError("rational with zero denominator");
    mpq_set_si(q_, num, 1);
    Rational d(den);
    mpq_div(q_, q_, d.q_);
}

Rational Rational::from_string(const std::string& s) {
    Rational r;
    if (s.empty() || mpq_set_str(r.q_, s.c_str(), 10) != 0)
        throw ParseError("malformed rational '" + s + "'");
    if (mpz_sgn(mpq_denref(r.q_)) == 0)
        throw ParseError("zero denominator in '" + s + "'");
    mpq_canonicalize(r.q_);
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("rational division by zero");
    mpq_div(q_, q_, o.q_);
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    Rational r;
    mpq_inv(r.q_, q_);
    return r;
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    Rational base = e < 0 ? inverse() : *this;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

std::string Rational::str() const {
    char* c = mpq_get_str(nullptr, 10, q_);
    std::string s(c);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(c, s.size() + 1);
    return s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace cyc
