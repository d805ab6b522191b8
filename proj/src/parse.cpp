#include "cyclicity/parse.hpp"

#include <cctype>
#include <set>
#include <tuple>

#include "cyclicity/errors.hpp"

namespace cyc {

namespace {

struct Token {
    enum class Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen,
                      Semicolon, Equals, Prime, End } type;
    std::string text;
    long offset;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        long off = static_cast<long>(pos_);
        if (pos_ >= src_.size()) {
            tok_ = {Token::Type::End, "", off};
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (pos_ < src_.size() && src_[pos_] == '.')
                throw ParseError("floating-point literals are rejected; use exact rationals", off);
            tok_ = {Token::Type::Number, src_.substr(start, pos_ - start), off};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            tok_ = {Token::Type::Ident, src_.substr(start, pos_ - start), off};
            return;
        }
        ++pos_;
        switch (c) {
        case '+': tok_ = {Token::Type::Plus, "+", off}; return;
        case '-': tok_ = {Token::Type::Minus, "-", off}; return;
        case '*': tok_ = {Token::Type::Star, "*", off}; return;
        case '/': tok_ = {Token::Type::Slash, "/", off}; return;
        case '^': tok_ = {Token::Type::Caret, "^", off}; return;
        case '(': tok_ = {Token::Type::LParen, "(", off}; return;
        case ')': tok_ = {Token::Type::RParen, ")", off}; return;
        case ';': tok_ = {Token::Type::Semicolon, ";", off}; return;
        case '=': tok_ = {Token::Type::Equals, "=", off}; return;
        case '\'': tok_ = {Token::Type::Prime, "'", off}; return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", off);
    }

    const std::string& src_;
    size_t pos_ = 0;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& src) : src_(src), lex_(src) {}

    // expr := ["+"|"-"] term (("+"|"-") term)*
    ExprPtr parse_expr(bool in_exp_arg) {
        std::vector<ExprPtr> kids;
        bool neg = false;
        if (lex_.peek().type == Token::Type::Plus) lex_.take();
        else if (lex_.peek().type == Token::Type::Minus) { lex_.take(); neg = true; }
        kids.push_back(signed_term(parse_term(in_exp_arg), neg));
        while (lex_.peek().type == Token::Type::Plus || lex_.peek().type == Token::Type::Minus) {
            bool minus = lex_.take().type == Token::Type::Minus;
            kids.push_back(signed_term(parse_term(in_exp_arg), minus));
        }
        return kids.size() == 1 ? kids[0] : Expr::sum(std::move(kids));
    }

    long position() const { return lex_.peek().offset; }

    void expect_end() {
        if (lex_.peek().type != Token::Type::End)
            throw ParseError("unexpected trailing input", lex_.peek().offset);
    }

    // system := stmt ";" stmt [";"]
    struct SystemParts {
        ExprPtr rhs_x, rhs_y;
        std::pair<long, long> span_x, span_y;
    };
    SystemParts parse_system_toplevel() {
        auto [isx1, rhs1, span1] = parse_stmt();
        expect(Token::Type::Semicolon, "expected ';' between the two equations");
        auto [isx2, rhs2, span2] = parse_stmt();
        if (lex_.peek().type == Token::Type::Semicolon) lex_.take();
        expect_end();
        if (isx1 == isx2)
            throw ParseError("the system needs one x' equation and one y' equation", 0);
        SystemParts out;
        out.rhs_x = isx1 ? rhs1 : rhs2;
        out.rhs_y = isx1 ? rhs2 : rhs1;
        out.span_x = isx1 ? span1 : span2;
        out.span_y = isx1 ? span2 : span1;
        return out;
    }

    // stmt := ("x'"|"y'") "=" expr
    std::tuple<bool, ExprPtr, std::pair<long, long>> parse_stmt() {
        Token id = expect(Token::Type::Ident, "expected x' or y'");
        if (id.text != "x" && id.text != "y")
            throw ParseError("expected x' or y' on the left-hand side", id.offset);
        expect(Token::Type::Prime, "expected ' after variable");
        expect(Token::Type::Equals, "expected '='");
        long start = lex_.peek().offset;
        ExprPtr rhs = parse_expr(false);
        long end = lex_.peek().offset;
        return {id.text == "x", rhs, {start, end - start}};
    }

private:
    static ExprPtr signed_term(ExprPtr t, bool neg) {
        if (!neg) return t;
        return Expr::prod({Expr::constant(Rational(-1)), std::move(t)});
    }

    Token expect(Token::Type ty, const std::string& what) {
        if (lex_.peek().type != ty) throw ParseError(what, lex_.peek().offset);
        return lex_.take();
    }

    // term := factor (("*"|"/") factor)*
    // "/" by an integer literal is exact rational scaling and is legal
    // anywhere; any other denominator is only permitted inside exp(...).
    ExprPtr parse_term(bool in_exp_arg) {
        std::vector<ExprPtr> num{parse_factor(in_exp_arg)};
        std::vector<ExprPtr> den;
        while (lex_.peek().type == Token::Type::Star || lex_.peek().type == Token::Type::Slash) {
            Token op = lex_.take();
            ExprPtr f = parse_factor(in_exp_arg);
            if (op.type == Token::Type::Star) {
                num.push_back(std::move(f));
            } else if (f->kind == Expr::Kind::Const) {
                if (f->value.is_zero()) throw ParseError("division by zero", op.offset);
                num.push_back(Expr::constant(f->value.inverse()));
            } else if (in_exp_arg) {
                den.push_back(std::move(f));
            } else {
                throw ParseError("division is only permitted inside exp(...) arguments or by "
                                 "integer constants (general rational functions are rejected)",
                                 op.offset);
            }
        }
        ExprPtr n = num.size() == 1 ? num[0] : Expr::prod(std::move(num));
        if (den.empty()) return n;
        ExprPtr d = den.size() == 1 ? den[0] : Expr::prod(std::move(den));
        return Expr::div(std::move(n), std::move(d));
    }

    // factor := base ("^" exponent)?   with "^" right-associative
    ExprPtr parse_factor(bool in_exp_arg) {
        ExprPtr b = parse_base(in_exp_arg);
        if (lex_.peek().type != Token::Type::Caret) return b;
        lex_.take();
        Rational e = parse_exponent();
        return Expr::pow(std::move(b), std::move(e));
    }

    // exponent := ["-"] integer | "(" ["-"] integer ("/" integer)? ")"
    Rational parse_exponent() {
        bool paren = false;
        if (lex_.peek().type == Token::Type::LParen) {
            paren = true;
            lex_.take();
        }
        bool neg = false;
        if (lex_.peek().type == Token::Type::Minus) {
            lex_.take();
            neg = true;
        }
        Token numt = expect(Token::Type::Number, "malformed exponent: expected an integer");
        Rational num = Rational::from_string(numt.text);
        if (neg) num = -num;
        if (paren) {
            if (lex_.peek().type == Token::Type::Slash) {
                lex_.take();
                Token dent = expect(Token::Type::Number, "malformed rational exponent: expected a denominator");
                Rational den = Rational::from_string(dent.text);
                if (den.is_zero())
                    throw ParseError("malformed rational exponent: zero denominator", dent.offset);
                num /= den;
            }
            expect(Token::Type::RParen, "malformed rational exponent: expected ')'");
        }
        return num;
    }

    // base := number | ident | "(" expr ")" | "exp" "(" expr ")"
    ExprPtr parse_base(bool in_exp_arg) {
        Token t = lex_.peek();
        switch (t.type) {
        case Token::Type::Number:
            lex_.take();
            return Expr::constant(Rational::from_string(t.text));
        case Token::Type::Ident: {
            lex_.take();
            if (t.text == "exp") {
                expect(Token::Type::LParen, "expected '(' after exp");
                ExprPtr arg = parse_expr(true);
                expect(Token::Type::RParen, "expected ')'");
                return Expr::exp(std::move(arg));
            }
            if (t.text == "x") return Expr::var_x();
            if (t.text == "y") return Expr::var_y();
            return Expr::param(t.text);
        }
        case Token::Type::LParen: {
            lex_.take();
            ExprPtr e = parse_expr(in_exp_arg);
            expect(Token::Type::RParen, "expected ')'");
            return e;
        }
        default:
            throw ParseError("expected a number, variable, parameter, or '('", t.offset);
        }
    }

    const std::string& src_;
    Lexer lex_;
};

} // namespace

ParsedSystem parse_system(const std::string& text, const Bindings& params) {
    Parser p(text);
    auto parts = p.parse_system_toplevel();

    ParsedSystem sys;
    sys.source = text;
    sys.px_ast = canonicalize(parts.rhs_x);
    sys.py_ast = canonicalize(parts.rhs_y);
    sys.span_x = parts.span_x;
    sys.span_y = parts.span_y;
    sys.params = params;

    {
        std::set<std::string> names;
        for (auto& n : free_params(sys.px_ast)) names.insert(n);
        for (auto& n : free_params(sys.py_ast)) names.insert(n);
        sys.param_names.assign(names.begin(), names.end());
        for (auto& n : sys.param_names)
            if (!params.count(n)) throw ParseError("unbound parameter '" + n + "'");
    }

    sys.P = to_poly2(sys.px_ast, params);
    sys.Q = to_poly2(sys.py_ast, params);

    if (sys.P && sys.Q) {
        Rational p0 = sys.P->coeff(0, 0), q0 = sys.Q->coeff(0, 0);
        if (!p0.is_zero())
            throw ParseError("origin not singular: P(0,0) = " + p0.str(), sys.span_x.first);
        if (!q0.is_zero())
            throw ParseError("origin not singular: Q(0,0) = " + q0.str(), sys.span_y.first);
    } else {
        EvalResult rx = eval_and_grad(sys.px_ast, 0.0, 0.0, params);
        EvalResult ry = eval_and_grad(sys.py_ast, 0.0, 0.0, params);
        if (rx.v != 0.0 || ry.v != 0.0)
            throw ParseError("origin not singular", sys.span_x.first);
    }
    return sys;
}

namespace {
ExprPtr mark_bases_nonneg(const ExprPtr& e) {
    Expr copy = *e;
    for (auto& k : copy.kids) k = mark_bases_nonneg(k);
    if (copy.kind == Expr::Kind::Pow && !copy.expo.is_integer()) copy.base_nonneg = true;
    return std::make_shared<const Expr>(std::move(copy));
}
} // namespace

ParsedExpression parse_expression(const std::string& text, bool assume_nonneg_bases) {
    Parser p(text);
    ExprPtr ast = p.parse_expr(false);
    p.expect_end();
    ast = canonicalize(ast);
    if (assume_nonneg_bases) ast = mark_bases_nonneg(ast);
    ParsedExpression out;
    out.ast = ast;
    out.params = free_params(ast);
    out.restricted_domain = has_restricted_domain(ast);
    return out;
}

std::string ParsedSystem::str() const {
    std::string sx = P ? P->str() : print_expr(px_ast);
    std::string sy = Q ? Q->str() : print_expr(py_ast);
    return "x' = " + sx + "; y' = " + sy;
}

} // namespace cyc
