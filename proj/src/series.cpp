#include "cyclicity/series.hpp"

#include <algorithm>

#include "cyclicity/errors.hpp"

namespace cyc {

PowerSeries1::PowerSeries1(int order, std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    c_.resize(order + 1, Rational(0));
}

bool PowerSeries1::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
}

PowerSeries1 PowerSeries1::truncated(int order) const {
    PowerSeries1 s(order);
    for (int k = 0; k <= std::min(order, this->order()); ++k) s.c_[k] = c_[k];
    return s;
}

PowerSeries1& PowerSeries1::operator+=(const PowerSeries1& o) {
    if (o.order() > order()) c_.resize(o.c_.size(), Rational(0));
    for (int k = 0; k <= o.order(); ++k) c_[k] += o.c_[k];
    return *this;
}

PowerSeries1 PowerSeries1::operator-() const {
    PowerSeries1 s(order());
    for (int k = 0; k <= order(); ++k) s.c_[k] = -c_[k];
    return s;
}

PowerSeries1 operator*(const PowerSeries1& a, const PowerSeries1& b) {
    int N = std::max(a.order(), b.order());
    PowerSeries1 s(N);
    for (int i = 0; i <= a.order(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (int j = 0; j <= b.order() && i + j <= N; ++j) {
            if (b.c_[j].is_zero()) continue;
            s.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return s;
}

PowerSeries1 PowerSeries1::scaled(const Rational& s) const {
    PowerSeries1 r(order());
    for (int k = 0; k <= order(); ++k) r.c_[k] = c_[k] * s;
    return r;
}

PowerSeries1 PowerSeries1::derivative() const {
    PowerSeries1 r(order());
    for (int k = 1; k <= order(); ++k) r.c_[k - 1] = c_[k] * Rational(k);
    return r;
}

bool operator==(const PowerSeries1& a, const PowerSeries1& b) {
    int N = std::max(a.order(), b.order());
    for (int k = 0; k <= N; ++k) {
        Rational ca = k <= a.order() ? a.c_[k] : Rational(0);
        Rational cb = k <= b.order() ? b.c_[k] : Rational(0);
        if (!(ca == cb)) return false;
    }
    return true;
}

PowerSeries1 PowerSeries1::compose(const PowerSeries1& inner) const {
    if (!inner.coeff(0).is_zero())
        throw DomainError("series composition requires zero constant term");
    int N = std::max(order(), inner.order());
    PowerSeries1 acc(N);
    // Horner: acc = c_N; acc = acc*inner + c_k
    for (int k = order(); k >= 0; --k) {
        acc = acc * inner;
        acc.c_[0] += c_[k];
    }
    return acc;
}

std::optional<std::pair<int, Rational>> PowerSeries1::leading() const {
    for (int k = 0; k <= order(); ++k)
        if (!c_[k].is_zero()) return std::make_pair(k, c_[k]);
    return std::nullopt;
}

double PowerSeries1::eval_d(double x) const {
    double s = 0;
    for (int k = order(); k >= 0; --k) s = s * x + c_[k].to_double();
    return s;
}

PowerSeries1 substitute_y(const Poly2& p, const PowerSeries1& s) {
    int N = s.order();
    int maxj = 0;
    for (auto& [k, c] : p.terms()) maxj = std::max(maxj, k.second);
    std::vector<PowerSeries1> spow(maxj + 1, PowerSeries1(N));
    spow[0].set_coeff(0, Rational(1));
    for (int j = 1; j <= maxj; ++j) spow[j] = spow[j - 1] * s;
    PowerSeries1 out(N);
    for (auto& [k, c] : p.terms()) {
        if (k.first > N) continue;
        PowerSeries1 term(N);
        for (int m = 0; m + k.first <= N; ++m)
            term.set_coeff(m + k.first, spow[k.second].coeff(m) * c);
        out += term;
    }
    return out;
}

PowerSeries1 series_solve_implicit(const Poly2& P2, int N) {
    if (N < 2) throw DomainError("series order must be >= 2");
    if (!P2.is_zero() && P2.lowest_degree() < 2)
        throw DomainError("implicit solve requires no constant or linear terms");
    PowerSeries1 F(N);
    for (int it = 0; it <= N + 1; ++it) {
        PowerSeries1 next = -substitute_y(P2, F);
        if (next == F) break;
        F = next;
    }
    return F;
}

} // namespace cyc
