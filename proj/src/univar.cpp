#include "cyclicity/univar.hpp"

#include <algorithm>
#include <cmath>

#include "cyclicity/errors.hpp"

namespace cyc {

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void RatPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational RatPoly::leading() const {
    if (c_.empty()) return Rational(0);
    return c_.back();
}

Rational RatPoly::eval(const Rational& t) const {
    Rational s(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * t + *it;
    return s;
}

RatPoly RatPoly::derivative() const {
    std::vector<Rational> d;
    for (size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * Rational(static_cast<long>(k)));
    return RatPoly(std::move(d));
}

RatPoly operator-(const RatPoly& a) {
    std::vector<Rational> d;
    d.reserve(a.c_.size());
    for (auto& c : a.c_) d.push_back(-c);
    return RatPoly(std::move(d));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    std::vector<Rational> d(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t k = 0; k < a.c_.size(); ++k) d[k] += a.c_[k];
    for (size_t k = 0; k < b.c_.size(); ++k) d[k] -= b.c_[k];
    return RatPoly(std::move(d));
}

RatPoly RatPoly::scaled(const Rational& s) const {
    std::vector<Rational> d;
    d.reserve(c_.size());
    for (auto& c : c_) d.push_back(c * s);
    return RatPoly(std::move(d));
}

RatPoly RatPoly::rem(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rational> r = a.c_;
    int db = b.degree();
    Rational lb = b.leading();
    while (static_cast<int>(r.size()) - 1 >= db) {
        int dr = static_cast<int>(r.size()) - 1;
        Rational q = r.back() / lb;
        for (int k = 0; k <= db; ++k) r[dr - db + k] -= q * b.c_[k];
        while (!r.empty() && r.back().is_zero()) r.pop_back();
    }
    return RatPoly(std::move(r));
}

RatPoly RatPoly::gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly x = a, y = b;
    while (!y.is_zero()) {
        RatPoly r = rem(x, y);
        x = y;
        y = r;
    }
    if (!x.is_zero()) x = x.scaled(x.leading().inverse()); // monic
    return x;
}

RatPoly RatPoly::squarefree_part() const {
    if (degree() <= 1) return *this;
    RatPoly g = gcd(*this, derivative());
    if (g.degree() <= 0) return *this;
    // exact division by g
    std::vector<Rational> q(degree() - g.degree() + 1, Rational(0));
    std::vector<Rational> r = c_;
    int dg = g.degree();
    Rational lg = g.leading();
    while (static_cast<int>(r.size()) - 1 >= dg && !r.empty()) {
        int dr = static_cast<int>(r.size()) - 1;
        Rational qc = r.back() / lg;
        q[dr - dg] = qc;
        for (int k = 0; k <= dg; ++k) r[dr - dg + k] -= qc * g.coeffs()[k];
        while (!r.empty() && r.back().is_zero()) r.pop_back();
    }
    return RatPoly(std::move(q));
}

namespace {

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain;
    chain.push_back(p);
    chain.push_back(p.derivative());
    while (!chain.back().is_zero() && chain.back().degree() >= 0) {
        RatPoly r = RatPoly::rem(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

int sign_variations_at(const std::vector<RatPoly>& chain, const Rational& t) {
    int var = 0, prev = 0;
    for (auto& p : chain) {
        int s = p.eval(t).sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

int sign_variations_at_infinity(const std::vector<RatPoly>& chain, int dir) {
    // dir = +1 for +inf, -1 for -inf
    int var = 0, prev = 0;
    for (auto& p : chain) {
        if (p.is_zero()) continue;
        int s = p.leading().sign();
        if (dir < 0 && (p.degree() % 2) == 1) s = -s;
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

Rational cauchy_bound(const RatPoly& p) {
    Rational b(0);
    Rational lead = p.leading().abs();
    for (auto& c : p.coeffs()) {
        Rational q = c.abs() / lead;
        if (q > b) b = q;
    }
    return b + Rational(1);
}

} // namespace

int sturm_real_root_count(const RatPoly& p) {
    if (p.is_zero()) throw DomainError("root count of the zero polynomial");
    RatPoly sf = p.squarefree_part();
    if (sf.degree() <= 0) return 0;
    auto chain = sturm_chain(sf);
    return sign_variations_at_infinity(chain, -1) - sign_variations_at_infinity(chain, +1);
}

std::vector<double> isolate_real_roots(const RatPoly& p) {
    std::vector<double> roots;
    if (p.is_zero() || p.degree() <= 0) return roots;
    RatPoly sf = p.squarefree_part();
    if (sf.degree() <= 0) return roots;
    auto chain = sturm_chain(sf);
    Rational B = cauchy_bound(sf);
    auto count_in = [&](const Rational& a, const Rational& b) {
        return sign_variations_at(chain, a) - sign_variations_at(chain, b);
    };

    struct Interval { Rational a, b; int cnt; };
    std::vector<Interval> work{{-B, B, count_in(-B, B)}};
    std::vector<std::pair<Rational, Rational>> isolated;
    while (!work.empty()) {
        Interval iv = work.back();
        work.pop_back();
        if (iv.cnt == 0) continue;
        if (iv.cnt == 1) {
            isolated.emplace_back(iv.a, iv.b);
            continue;
        }
        Rational mid = (iv.a + iv.b) / Rational(2);
        // nudge off an exact root of the chain head
        if (sf.eval(mid).is_zero()) mid = (iv.a + mid) / Rational(2);
        work.push_back({iv.a, mid, count_in(iv.a, mid)});
        work.push_back({mid, iv.b, count_in(mid, iv.b)});
    }
    for (auto& [a0, b0] : isolated) {
        Rational a = a0, b = b0;
        for (int it = 0; it < 80 && (b - a).to_double() > 1e-14 * (1 + std::fabs(a.to_double())); ++it) {
            Rational mid = (a + b) / Rational(2);
            if (sf.eval(mid).is_zero()) { a = mid; b = mid; break; }
            if (count_in(a, mid) == 1)
                b = mid;
            else
                a = mid;
        }
        roots.push_back((a.to_double() + b.to_double()) / 2);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace cyc
