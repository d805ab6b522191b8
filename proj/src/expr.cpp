#include "cyclicity/expr.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cyclicity/errors.hpp"

namespace cyc {

namespace {
ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
} // namespace

ExprPtr Expr::constant(Rational v) {
    Expr e;
    e.kind = Kind::Const;
    e.value = std::move(v);
    return make(std::move(e));
}
ExprPtr Expr::var_x() {
    Expr e;
    e.kind = Kind::VarX;
    return make(std::move(e));
}
ExprPtr Expr::var_y() {
    Expr e;
    e.kind = Kind::VarY;
    return make(std::move(e));
}
ExprPtr Expr::param(std::string n) {
    Expr e;
    e.kind = Kind::Param;
    e.name = std::move(n);
    return make(std::move(e));
}
ExprPtr Expr::sum(std::vector<ExprPtr> kids) {
    Expr e;
    e.kind = Kind::Sum;
    e.kids = std::move(kids);
    return make(std::move(e));
}
ExprPtr Expr::prod(std::vector<ExprPtr> kids) {
    Expr e;
    e.kind = Kind::Prod;
    e.kids = std::move(kids);
    return make(std::move(e));
}
ExprPtr Expr::pow(ExprPtr base, Rational ex) {
    Expr e;
    e.kind = Kind::Pow;
    e.kids = {std::move(base)};
    e.expo = std::move(ex);
    return make(std::move(e));
}
ExprPtr Expr::exp(ExprPtr arg) {
    Expr e;
    e.kind = Kind::Exp;
    e.kids = {std::move(arg)};
    return make(std::move(e));
}
ExprPtr Expr::div(ExprPtr num, ExprPtr den) {
    Expr e;
    e.kind = Kind::Div;
    e.kids = {std::move(num), std::move(den)};
    return make(std::move(e));
}

EvalResult eval_and_grad(const ExprPtr& e, double x, double y, const Bindings& params) {
    switch (e->kind) {
    case Expr::Kind::Const:
        return {e->value.to_double(), 0, 0};
    case Expr::Kind::VarX:
        return {x, 1, 0};
    case Expr::Kind::VarY:
        return {y, 0, 1};
    case Expr::Kind::Param: {
        auto it = params.find(e->name);
        if (it == params.end()) throw DomainError("unbound parameter '" + e->name + "'");
        return {it->second.to_double(), 0, 0};
    }
    case Expr::Kind::Sum: {
        EvalResult r{0, 0, 0};
        for (auto& k : e->kids) {
            EvalResult a = eval_and_grad(k, x, y, params);
            r.v += a.v;
            r.dx += a.dx;
            r.dy += a.dy;
        }
        return r;
    }
    case Expr::Kind::Prod: {
        EvalResult r{1, 0, 0};
        for (auto& k : e->kids) {
            EvalResult a = eval_and_grad(k, x, y, params);
            r.dx = r.dx * a.v + r.v * a.dx;
            r.dy = r.dy * a.v + r.v * a.dy;
            r.v *= a.v;
        }
        return r;
    }
    case Expr::Kind::Div: {
        EvalResult n = eval_and_grad(e->kids[0], x, y, params);
        EvalResult d = eval_and_grad(e->kids[1], x, y, params);
        if (d.v == 0.0) throw DomainError("zero denominator at evaluation point");
        double inv = 1.0 / d.v;
        return {n.v * inv, (n.dx * d.v - n.v * d.dx) * inv * inv,
                (n.dy * d.v - n.v * d.dy) * inv * inv};
    }
    case Expr::Kind::Exp: {
        EvalResult a = eval_and_grad(e->kids[0], x, y, params);
        double v = std::exp(a.v);
        if (!std::isfinite(v)) throw DomainError("overflow in exp");
        return {v, v * a.dx, v * a.dy};
    }
    case Expr::Kind::Pow: {
        EvalResult a = eval_and_grad(e->kids[0], x, y, params);
        const Rational& ex = e->expo;
        if (ex.is_integer()) {
            long n = ex.to_long();
            if (a.v == 0.0 && n < 0) throw DomainError("negative power of zero");
            if (n == 0) return {1, 0, 0};
            double v = std::pow(a.v, static_cast<double>(n));
            double dv = static_cast<double>(n) * std::pow(a.v, static_cast<double>(n - 1));
            return {v, dv * a.dx, dv * a.dy};
        }
        double ed = ex.to_double();
        if (a.v < 0.0) throw DomainError("negative base under a rational power");
        if (a.v == 0.0) {
            if (ed > 1.0) return {0, 0, 0}; // limit of the power rule
            if (ed > 0.0 && a.dx == 0.0 && a.dy == 0.0) return {0, 0, 0};
            throw DomainError("singular rational power at zero base");
        }
        double v = std::pow(a.v, ed);
        double dv = ed * std::pow(a.v, ed - 1.0);
        if (!std::isfinite(v) || !std::isfinite(dv)) throw DomainError("overflow in power");
        return {v, dv * a.dx, dv * a.dy};
    }
    }
    throw DomainError("unreachable expression kind");
}

namespace {

int kind_rank(Expr::Kind k) {
    switch (k) {
    case Expr::Kind::Const: return 0;
    case Expr::Kind::Param: return 1;
    case Expr::Kind::VarX: return 2;
    case Expr::Kind::VarY: return 3;
    case Expr::Kind::Pow: return 4;
    case Expr::Kind::Exp: return 5;
    case Expr::Kind::Div: return 6;
    case Expr::Kind::Prod: return 7;
    case Expr::Kind::Sum: return 8;
    }
    return 9;
}

int cmp_expr(const ExprPtr& a, const ExprPtr& b) {
    if (kind_rank(a->kind) != kind_rank(b->kind))
        return kind_rank(a->kind) < kind_rank(b->kind) ? -1 : 1;
    switch (a->kind) {
    case Expr::Kind::Const:
        if (a->value == b->value) return 0;
        return a->value < b->value ? -1 : 1;
    case Expr::Kind::Param:
        return a->name.compare(b->name);
    case Expr::Kind::VarX:
    case Expr::Kind::VarY:
        return 0;
    default:
        break;
    }
    if (a->kind == Expr::Kind::Pow) {
        if (!(a->expo == b->expo)) return a->expo < b->expo ? -1 : 1;
    }
    if (a->kids.size() != b->kids.size())
        return a->kids.size() < b->kids.size() ? -1 : 1;
    for (size_t i = 0; i < a->kids.size(); ++i) {
        int c = cmp_expr(a->kids[i], b->kids[i]);
        if (c) return c;
    }
    return 0;
}

// All exponents even and all coefficients positive: a sum of even powers,
// provably nonnegative on the whole plane.
bool provably_nonneg(const ExprPtr& base) {
    auto p = to_poly2(base, {});
    if (!p) return false;
    for (auto& [k, c] : p->terms()) {
        if (k.first % 2 != 0 || k.second % 2 != 0) return false;
        if (c.sign() <= 0) return false;
    }
    return true;
}

} // namespace

ExprPtr canonicalize(const ExprPtr& e) {
    switch (e->kind) {
    case Expr::Kind::Const:
    case Expr::Kind::VarX:
    case Expr::Kind::VarY:
    case Expr::Kind::Param:
        return e;
    case Expr::Kind::Exp:
        return Expr::exp(canonicalize(e->kids[0]));
    case Expr::Kind::Div: {
        ExprPtr n = canonicalize(e->kids[0]), d = canonicalize(e->kids[1]);
        if (d->kind == Expr::Kind::Const) {
            if (d->value.is_zero()) throw DomainError("constant zero denominator");
            return canonicalize(Expr::prod({Expr::constant(d->value.inverse()), n}));
        }
        return Expr::div(n, d);
    }
    case Expr::Kind::Pow: {
        ExprPtr b = canonicalize(e->kids[0]);
        if (e->expo.is_zero()) return Expr::constant(Rational(1));
        if (e->expo.is_one()) return b;
        if (b->kind == Expr::Kind::Const && e->expo.is_integer() && e->expo.fits_long())
            return Expr::constant(b->value.pow(e->expo.to_long()));
        Expr out;
        out.kind = Expr::Kind::Pow;
        out.kids = {b};
        out.expo = e->expo;
        out.base_nonneg = e->base_nonneg || (!e->expo.is_integer() && provably_nonneg(b));
        return std::make_shared<const Expr>(std::move(out));
    }
    case Expr::Kind::Sum: {
        std::vector<ExprPtr> kids;
        Rational cst(0);
        std::vector<ExprPtr> stack(e->kids.rbegin(), e->kids.rend());
        while (!stack.empty()) {
            ExprPtr k = canonicalize(stack.back());
            stack.pop_back();
            if (k->kind == Expr::Kind::Sum) {
                for (auto it = k->kids.rbegin(); it != k->kids.rend(); ++it) stack.push_back(*it);
            } else if (k->kind == Expr::Kind::Const) {
                cst += k->value;
            } else {
                kids.push_back(k);
            }
        }
        std::stable_sort(kids.begin(), kids.end(),
                         [](const ExprPtr& a, const ExprPtr& b) { return cmp_expr(a, b) < 0; });
        if (!cst.is_zero()) kids.insert(kids.begin(), Expr::constant(cst));
        if (kids.empty()) return Expr::constant(Rational(0));
        if (kids.size() == 1) return kids[0];
        return Expr::sum(std::move(kids));
    }
    case Expr::Kind::Prod: {
        std::vector<ExprPtr> kids;
        std::vector<ExprPtr> denoms;
        Rational cst(1);
        std::vector<ExprPtr> stack(e->kids.rbegin(), e->kids.rend());
        while (!stack.empty()) {
            ExprPtr k = canonicalize(stack.back());
            stack.pop_back();
            if (k->kind == Expr::Kind::Prod) {
                for (auto it = k->kids.rbegin(); it != k->kids.rend(); ++it) stack.push_back(*it);
            } else if (k->kind == Expr::Kind::Const) {
                cst *= k->value;
            } else if (k->kind == Expr::Kind::Div) {
                stack.push_back(k->kids[0]);
                denoms.push_back(k->kids[1]);
            } else {
                kids.push_back(k);
            }
        }
        if (cst.is_zero()) return Expr::constant(Rational(0));
        std::stable_sort(kids.begin(), kids.end(),
                         [](const ExprPtr& a, const ExprPtr& b) { return cmp_expr(a, b) < 0; });
        if (!cst.is_one()) kids.insert(kids.begin(), Expr::constant(cst));
        ExprPtr numerator;
        if (kids.empty())
            numerator = Expr::constant(Rational(1));
        else if (kids.size() == 1)
            numerator = kids[0];
        else
            numerator = Expr::prod(std::move(kids));
        if (denoms.empty()) return numerator;
        ExprPtr den = denoms.size() == 1 ? denoms[0] : canonicalize(Expr::prod(std::move(denoms)));
        return Expr::div(numerator, den);
    }
    }
    return e;
}

namespace {

// Precedence: Sum < Prod/Div < Pow < atoms.
int precedence(const ExprPtr& e) {
    switch (e->kind) {
    case Expr::Kind::Sum: return 1;
    case Expr::Kind::Prod:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Pow: return 3;
    default: return 4;
    }
}

void print_rec(std::ostringstream& os, const ExprPtr& e, int parent_prec);

void print_wrapped(std::ostringstream& os, const ExprPtr& e, int parent_prec) {
    bool paren = precedence(e) < parent_prec ||
                 (e->kind == Expr::Kind::Const && e->value.sign() < 0 && parent_prec > 1);
    if (paren) os << "(";
    print_rec(os, e, paren ? 0 : parent_prec);
    if (paren) os << ")";
}

void print_rec(std::ostringstream& os, const ExprPtr& e, int parent_prec) {
    switch (e->kind) {
    case Expr::Kind::Const:
        os << e->value.str();
        return;
    case Expr::Kind::VarX:
        os << "x";
        return;
    case Expr::Kind::VarY:
        os << "y";
        return;
    case Expr::Kind::Param:
        os << e->name;
        return;
    case Expr::Kind::Sum: {
        bool first = true;
        for (auto& k : e->kids) {
            // fold a leading negative constant factor into a minus sign
            ExprPtr item = k;
            bool neg = false;
            if (item->kind == Expr::Kind::Const && item->value.sign() < 0) {
                neg = true;
                item = Expr::constant(-item->value);
            } else if (item->kind == Expr::Kind::Prod && !item->kids.empty() &&
                       item->kids[0]->kind == Expr::Kind::Const &&
                       item->kids[0]->value.sign() < 0) {
                neg = true;
                std::vector<ExprPtr> rest(item->kids.begin(), item->kids.end());
                Rational c = -rest[0]->value;
                if (c.is_one())
                    rest.erase(rest.begin());
                else
                    rest[0] = Expr::constant(c);
                item = rest.size() == 1 ? rest[0] : Expr::prod(std::move(rest));
            }
            if (first) {
                if (neg) os << "-";
            } else {
                os << (neg ? " - " : " + ");
            }
            first = false;
            print_wrapped(os, item, 2);
        }
        return;
    }
    case Expr::Kind::Prod: {
        bool first = true;
        size_t start = 0;
        // a leading negative constant prints as a sign when legal here
        if (parent_prec <= 2 && e->kids[0]->kind == Expr::Kind::Const &&
            e->kids[0]->value.sign() < 0) {
            os << "-";
            Rational c = -e->kids[0]->value;
            start = 1;
            if (!c.is_one() || e->kids.size() == 1) {
                os << c.str();
                first = false;
            }
        }
        for (size_t i = start; i < e->kids.size(); ++i) {
            if (!first) os << "*";
            first = false;
            print_wrapped(os, e->kids[i], 3);
        }
        return;
    }
    case Expr::Kind::Div:
        print_wrapped(os, e->kids[0], 2);
        os << "/";
        print_wrapped(os, e->kids[1], 3);
        return;
    case Expr::Kind::Exp:
        os << "exp(";
        print_rec(os, e->kids[0], 0);
        os << ")";
        return;
    case Expr::Kind::Pow: {
        print_wrapped(os, e->kids[0], 4);
        os << "^";
        if (e->expo.is_integer() && e->expo.sign() > 0)
            os << e->expo.str();
        else
            os << "(" << e->expo.str() << ")";
        return;
    }
    }
}

} // namespace

std::string print_expr(const ExprPtr& e) {
    std::ostringstream os;
    print_rec(os, e, 0);
    return os.str();
}

namespace {
void collect_params(const ExprPtr& e, std::set<std::string>& out) {
    if (e->kind == Expr::Kind::Param) out.insert(e->name);
    for (auto& k : e->kids) collect_params(k, out);
}
} // namespace

std::vector<std::string> free_params(const ExprPtr& e) {
    std::set<std::string> s;
    collect_params(e, s);
    return {s.begin(), s.end()};
}

std::optional<Poly2> to_poly2(const ExprPtr& e, const Bindings& params) {
    switch (e->kind) {
    case Expr::Kind::Const:
        return Poly2::constant(e->value);
    case Expr::Kind::VarX:
        return Poly2::var_x();
    case Expr::Kind::VarY:
        return Poly2::var_y();
    case Expr::Kind::Param: {
        auto it = params.find(e->name);
        if (it == params.end()) return std::nullopt;
        return Poly2::constant(it->second);
    }
    case Expr::Kind::Sum: {
        Poly2 acc;
        for (auto& k : e->kids) {
            auto p = to_poly2(k, params);
            if (!p) return std::nullopt;
            acc += *p;
        }
        return acc;
    }
    case Expr::Kind::Prod: {
        Poly2 acc = Poly2::constant(Rational(1));
        for (auto& k : e->kids) {
            auto p = to_poly2(k, params);
            if (!p) return std::nullopt;
            acc *= *p;
        }
        return acc;
    }
    case Expr::Kind::Pow: {
        if (!e->expo.is_integer() || e->expo.sign() < 0 || !e->expo.fits_long())
            return std::nullopt;
        auto p = to_poly2(e->kids[0], params);
        if (!p) return std::nullopt;
        return p->pow(static_cast<int>(e->expo.to_long()));
    }
    case Expr::Kind::Exp:
    case Expr::Kind::Div:
        return std::nullopt;
    }
    return std::nullopt;
}

bool has_restricted_domain(const ExprPtr& e) {
    if (e->kind == Expr::Kind::Div) return true;
    if (e->kind == Expr::Kind::Pow && !e->expo.is_integer() && !e->base_nonneg) return true;
    if (e->kind == Expr::Kind::Pow && e->expo.is_integer() && e->expo.sign() < 0) return true;
    for (auto& k : e->kids)
        if (has_restricted_domain(k)) return true;
    return false;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    return cmp_expr(canonicalize(a), canonicalize(b)) == 0;
}

} // namespace cyc
