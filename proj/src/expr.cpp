#include "ngt/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "ngt/errors.hpp"
#include "ngt/growth.hpp"

namespace ngt {

static ExprPtr make(Expr::Kind k) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    return e;
}

ExprPtr Expr::constant(const cplx& c) { return constant_log(LogComplex::from_complex(c)); }

ExprPtr Expr::constant_log(const LogComplex& c) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Constant;
    e->cval = c;
    return e;
}

ExprPtr Expr::omega() { return make(Kind::Omega); }
ExprPtr Expr::logw() { return make(Kind::LogW); }

ExprPtr Expr::add(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Add;
    e->children = {std::move(a), std::move(b)};
    return e;
}

ExprPtr Expr::sub(ExprPtr a, ExprPtr b) { return add(std::move(a), neg(std::move(b))); }

ExprPtr Expr::mul(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Mul;
    e->children = {std::move(a), std::move(b)};
    return e;
}

ExprPtr Expr::div(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Div;
    e->children = {std::move(a), std::move(b)};
    return e;
}

ExprPtr Expr::ipow(ExprPtr a, long n) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::IPow;
    e->power = n;
    e->children = {std::move(a)};
    return e;
}

ExprPtr Expr::exp(ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Exp;
    e->children = {std::move(a)};
    return e;
}

ExprPtr Expr::series_leaf(std::shared_ptr<const LogSeries> s) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::SeriesLeaf;
    e->series = std::move(s);
    return e;
}

ExprPtr Expr::neg(ExprPtr a) { return mul(constant(cplx(-1.0, 0.0)), std::move(a)); }

LogComplex expr_eval(const Expr& e, const cplx& w) {
    switch (e.kind) {
        case Expr::Kind::Constant: return e.cval;
        case Expr::Kind::Omega: return LogComplex::from_complex(w);
        case Expr::Kind::Add:
            return lc_add(expr_eval(*e.children[0], w), expr_eval(*e.children[1], w));
        case Expr::Kind::Mul:
            return lc_mul(expr_eval(*e.children[0], w), expr_eval(*e.children[1], w));
        case Expr::Kind::Div:
            return lc_div(expr_eval(*e.children[0], w), expr_eval(*e.children[1], w));
        case Expr::Kind::IPow:
            return lc_pow_int(expr_eval(*e.children[0], w), e.power);
        case Expr::Kind::Exp:
            return lc_exp(expr_eval(*e.children[0], w));
        case Expr::Kind::LogW: {
            double m = std::abs(w);
            if (m == 0.0) throw EvaluationAtSingularity("logw at w = 0");
            return LogComplex::from_complex(cplx(std::log(m), std::arg(w)));
        }
        case Expr::Kind::SeriesLeaf: return e.series->eval(w);
    }
    throw UnsupportedNode("unknown expression node");
}

ExprPtr expr_diff_w(const ExprPtr& e) {
    using K = Expr::Kind;
    switch (e->kind) {
        case K::Constant: return Expr::constant(cplx(0.0, 0.0));
        case K::Omega: return Expr::constant(cplx(1.0, 0.0));
        case K::Add: return Expr::add(expr_diff_w(e->children[0]), expr_diff_w(e->children[1]));
        case K::Mul:
            return Expr::add(Expr::mul(expr_diff_w(e->children[0]), e->children[1]),
                             Expr::mul(e->children[0], expr_diff_w(e->children[1])));
        case K::Div: {
            const auto &u = e->children[0], &v = e->children[1];
            return Expr::div(Expr::sub(Expr::mul(expr_diff_w(u), v), Expr::mul(u, expr_diff_w(v))),
                             Expr::ipow(v, 2));
        }
        case K::IPow: {
            if (e->power == 0) return Expr::constant(cplx(0.0, 0.0));
            return Expr::mul(Expr::constant(cplx(double(e->power), 0.0)),
                             Expr::mul(Expr::ipow(e->children[0], e->power - 1),
                                       expr_diff_w(e->children[0])));
        }
        case K::Exp: return Expr::mul(expr_diff_w(e->children[0]), e);
        case K::LogW: return Expr::div(Expr::constant(cplx(1.0, 0.0)), Expr::omega());
        case K::SeriesLeaf:
            return Expr::series_leaf(std::make_shared<LogSeries>(e->series->derivative_w()));
    }
    throw UnsupportedNode("no derivative rule for node");
}

// ---------------------------------------------------------------------------
// Parser (recursive descent)

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    std::shared_ptr<const LogSeries> bound;

    void skip_ws() { while (pos < s.size() && std::isspace(uint8_t(s[pos]))) ++pos; }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    bool eat_word(const char* w) {
        skip_ws();
        std::size_t n = std::string(w).size();
        if (s.compare(pos, n, w) == 0 &&
            (pos + n >= s.size() || !std::isalnum(uint8_t(s[pos + n])))) {
            pos += n;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw SchemaError("expression parse error at offset " + std::to_string(pos) + ": " + msg);
    }

    ExprPtr expr() {
        ExprPtr a = term();
        for (;;) {
            if (eat('+')) a = Expr::add(a, term());
            else if (eat('-')) a = Expr::sub(a, term());
            else return a;
        }
    }
    ExprPtr term() {
        ExprPtr a = factor();
        for (;;) {
            if (eat('*')) a = Expr::mul(a, factor());
            else if (eat('/')) a = Expr::div(a, factor());
            else return a;
        }
    }
    ExprPtr factor() {
        if (eat('-')) return Expr::neg(factor());
        if (eat('+')) return factor();
        return power();
    }
    ExprPtr power() {
        ExprPtr a = atom();
        if (eat('^')) {
            skip_ws();
            bool neg = eat('-');
            skip_ws();
            long n = 0;
            auto [p, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), n);
            if (ec != std::errc()) fail("integer exponent expected");
            pos = std::size_t(p - s.data());
            return Expr::ipow(a, neg ? -n : n);
        }
        return a;
    }
    ExprPtr atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        if (eat('(')) {
            ExprPtr a = expr();
            if (!eat(')')) fail("expected ')'");
            return a;
        }
        if (eat_word("exp")) {
            if (!eat('(')) fail("expected '(' after exp");
            ExprPtr a = expr();
            if (!eat(')')) fail("expected ')'");
            return Expr::exp(a);
        }
        if (eat_word("logw")) return Expr::logw();
        if (eat_word("w")) return Expr::omega();
        if (eat_word("S")) {
            if (!bound) fail("series symbol S used but no series attached");
            return Expr::series_leaf(bound);
        }
        if (eat_word("i")) return Expr::constant(cplx(0.0, 1.0));
        double v = 0.0;
        auto [p, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
        if (ec != std::errc() || p == s.data() + pos) fail("number expected");
        pos = std::size_t(p - s.data());
        return Expr::constant(cplx(v, 0.0));
    }
};

} // namespace

ExprPtr parse_expression(const std::string& text, std::shared_ptr<const LogSeries> bound_series) {
    Parser p{text, 0, std::move(bound_series)};
    ExprPtr e = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

std::string expr_to_string(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::Constant: {
            cplx c = e.cval.to_complex();
            if (c.imag() == 0.0) return "(" + format_double(c.real()) + ")";
            return "((" + format_double(c.real()) + ")+(" + format_double(c.imag()) + ")*i)";
        }
        case K::Omega: return "w";
        case K::LogW: return "logw";
        case K::Add: return "(" + expr_to_string(*e.children[0]) + "+" + expr_to_string(*e.children[1]) + ")";
        case K::Mul: return "(" + expr_to_string(*e.children[0]) + "*" + expr_to_string(*e.children[1]) + ")";
        case K::Div: return "(" + expr_to_string(*e.children[0]) + "/" + expr_to_string(*e.children[1]) + ")";
        case K::IPow: return expr_to_string(*e.children[0]) + "^" + std::to_string(e.power);
        case K::Exp: return "exp(" + expr_to_string(*e.children[0]) + ")";
        case K::SeriesLeaf: return "S[" + std::to_string(e.series->size()) + "]";
    }
    return "?";
}

} // namespace ngt
