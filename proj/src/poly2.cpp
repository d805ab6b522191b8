#include "cyclicity/poly2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cyclicity/errors.hpp"

namespace cyc {

Poly2 Poly2::constant(Rational c) {
    Poly2 p;
    p.set_coeff(0, 0, std::move(c));
    return p;
}

Poly2 Poly2::monomial(int i, int j, Rational c) {
    Poly2 p;
    p.set_coeff(i, j, std::move(c));
    return p;
}

Rational Poly2::coeff(int i, int j) const {
    auto it = t_.find({i, j});
    return it == t_.end() ? Rational(0) : it->second;
}

void Poly2::set_coeff(int i, int j, Rational c) {
    if (i < 0 || j < 0) throw DomainError("negative exponent in Poly2");
    if (c.is_zero())
        t_.erase({i, j});
    else
        t_[{i, j}] = std::move(c);
}

int Poly2::total_degree() const {
    int d = -1;
    for (auto& [k, c] : t_) d = std::max(d, k.first + k.second);
    return d;
}

int Poly2::lowest_degree() const {
    if (t_.empty()) return -1;
    int d = 1 << 30;
    for (auto& [k, c] : t_) d = std::min(d, k.first + k.second);
    return d;
}

Poly2 Poly2::homogeneous_part(int d) const {
    Poly2 p;
    for (auto& [k, c] : t_)
        if (k.first + k.second == d) p.t_[k] = c;
    return p;
}

bool Poly2::is_homogeneous(int d) const {
    for (auto& [k, c] : t_)
        if (k.first + k.second != d) return false;
    return true;
}

Poly2& Poly2::operator+=(const Poly2& o) {
    for (auto& [k, c] : o.t_) {
        auto it = t_.find(k);
        if (it == t_.end()) {
            t_[k] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
    return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) { return *this += -o; }

Poly2 Poly2::operator-() const {
    Poly2 p;
    for (auto& [k, c] : t_) p.t_[k] = -c;
    return p;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 p;
    for (auto& [ka, ca] : a.t_)
        for (auto& [kb, cb] : b.t_) {
            Poly2::Key k{ka.first + kb.first, ka.second + kb.second};
            auto it = p.t_.find(k);
            if (it == p.t_.end()) {
                Rational prod = ca * cb;
                if (!prod.is_zero()) p.t_[k] = std::move(prod);
            } else {
                it->second += ca * cb;
                if (it->second.is_zero()) p.t_.erase(it);
            }
        }
    return p;
}

Poly2 Poly2::scaled(const Rational& c) const {
    Poly2 p;
    if (c.is_zero()) return p;
    for (auto& [k, v] : t_) p.t_[k] = v * c;
    return p;
}

Poly2 Poly2::pow(int e) const {
    if (e < 0) throw DomainError("negative Poly2 power");
    Poly2 acc = constant(Rational(1));
    Poly2 base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Poly2 Poly2::dx() const {
    Poly2 p;
    for (auto& [k, c] : t_)
        if (k.first > 0) p.t_[{k.first - 1, k.second}] = c * Rational(k.first);
    return p;
}

Poly2 Poly2::dy() const {
    Poly2 p;
    for (auto& [k, c] : t_)
        if (k.second > 0) p.t_[{k.first, k.second - 1}] = c * Rational(k.second);
    return p;
}

Poly2 Poly2::subst_linear(const Rational& a, const Rational& b,
                          const Rational& c, const Rational& d) const {
    Poly2 lx = Poly2::monomial(1, 0, a) + Poly2::monomial(0, 1, b);
    Poly2 ly = Poly2::monomial(1, 0, c) + Poly2::monomial(0, 1, d);
    int deg = total_degree();
    std::vector<Poly2> px(std::max(deg, 0) + 1), py(std::max(deg, 0) + 1);
    px[0] = Poly2::constant(Rational(1));
    py[0] = px[0];
    for (int k = 1; k <= deg; ++k) {
        px[k] = px[k - 1] * lx;
        py[k] = py[k - 1] * ly;
    }
    Poly2 out;
    for (auto& [k, coef] : t_) out += (px[k.first] * py[k.second]).scaled(coef);
    return out;
}

Rational Poly2::eval(const Rational& x, const Rational& y) const {
    Rational s(0);
    for (auto& [k, c] : t_) s += c * x.pow(k.first) * y.pow(k.second);
    return s;
}

double Poly2::eval_d(double x, double y) const {
    double s = 0;
    for (auto& [k, c] : t_) s += c.to_double() * std::pow(x, k.first) * std::pow(y, k.second);
    return s;
}

std::string Poly2::str() const {
    if (t_.empty()) return "0";
    std::vector<std::pair<Key, Rational>> terms(t_.begin(), t_.end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
        if (da != db) return da < db;
        return a.first.first > b.first.first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms) {
        Rational ac = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool has_vars = k.first > 0 || k.second > 0;
        if (!ac.is_one() || !has_vars) {
            os << ac.str();
            if (has_vars) os << "*";
        }
        if (k.first > 0) {
            os << "x";
            if (k.first > 1) os << "^" << k.first;
        }
        if (k.second > 0) {
            if (k.first > 0) os << "*";
            os << "y";
            if (k.second > 1) os << "^" << k.second;
        }
    }
    return os.str();
}

DPoly2::DPoly2(const Poly2& p) {
    for (auto& [k, c] : p.terms()) t_[k] = c.to_double();
}

void DPoly2::add_term(int i, int j, double c) {
    if (c == 0.0) return;
    double& v = t_[{i, j}];
    v += c;
    if (v == 0.0) t_.erase({i, j});
}

double DPoly2::coeff(int i, int j) const {
    auto it = t_.find({i, j});
    return it == t_.end() ? 0.0 : it->second;
}

DPoly2& DPoly2::operator+=(const DPoly2& o) {
    for (auto& [k, c] : o.t_) add_term(k.first, k.second, c);
    return *this;
}

DPoly2 operator*(const DPoly2& a, const DPoly2& b) {
    DPoly2 p;
    for (auto& [ka, ca] : a.t_)
        for (auto& [kb, cb] : b.t_)
            p.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return p;
}

DPoly2 DPoly2::scaled(double c) const {
    DPoly2 p;
    if (c == 0.0) return p;
    for (auto& [k, v] : t_) p.t_[k] = v * c;
    return p;
}

double DPoly2::eval(double x, double y) const {
    double s = 0;
    for (auto& [k, c] : t_) s += c * std::pow(x, k.first) * std::pow(y, k.second);
    return s;
}

DPoly2 DPoly2::dx() const {
    DPoly2 p;
    for (auto& [k, c] : t_)
        if (k.first > 0) p.t_[{k.first - 1, k.second}] = c * k.first;
    return p;
}

DPoly2 DPoly2::dy() const {
    DPoly2 p;
    for (auto& [k, c] : t_)
        if (k.second > 0) p.t_[{k.first, k.second - 1}] = c * k.second;
    return p;
}

void DPoly2::prune(double tol) {
    double mx = 0;
    for (auto& [k, c] : t_) mx = std::max(mx, std::fabs(c));
    for (auto it = t_.begin(); it != t_.end();) {
        if (std::fabs(it->second) <= tol * mx)
            it = t_.erase(it);
        else
            ++it;
    }
}

std::vector<std::pair<int, Poly2>> quasihomogeneous_decompose(const Poly2& p, int n) {
    if (n < 1) throw DomainError("quasihomogeneous weight must be >= 1");
    std::map<int, Poly2> buckets;
    for (auto& [k, c] : p.terms()) {
        int w = k.first + n * k.second;
        buckets[w].set_coeff(k.first, k.second, c);
    }
    std::vector<std::pair<int, Poly2>> out;
    out.reserve(buckets.size());
    for (auto& [w, part] : buckets) out.emplace_back(w, std::move(part));
    return out;
}

bool euler_check(const Poly2& R, int n, int w) {
    Poly2 lhs = Poly2::var_x() * R.dx() + (Poly2::var_y() * R.dy()).scaled(Rational(n));
    return lhs == R.scaled(Rational(w));
}

int lowest_weighted_degree(const Poly2& p, int n) {
    if (p.is_zero()) return -1;
    int w = 1 << 30;
    for (auto& [k, c] : p.terms()) w = std::min(w, k.first + n * k.second);
    return w;
}

} // namespace cyc
