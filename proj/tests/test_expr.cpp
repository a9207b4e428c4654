#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>

#include "ngt/errors.hpp"
#include "ngt/expr.hpp"

using namespace ngt;

namespace {

cplx ev(const ExprPtr& e, const cplx& w) { return expr_eval(*e, w).to_complex(); }

// Five-point central difference; h tuned for ~1e-10 truncation at |w| ~ 1.
cplx fd_diff(const ExprPtr& e, const cplx& w) {
    double h = 1e-4;
    cplx f1 = ev(e, w + cplx(h, 0)), fm1 = ev(e, w - cplx(h, 0));
    cplx f2 = ev(e, w + cplx(2 * h, 0)), fm2 = ev(e, w - cplx(2 * h, 0));
    return (8.0 * (f1 - fm1) - (f2 - fm2)) / (12.0 * h);
}

} // namespace

TEST_CASE("parser evaluates the documented grammar") {
    struct Case { const char* text; cplx w; cplx want; };
    cplx w(0.7, -0.4);
    std::vector<Case> cases = {
        {"w", w, w},
        {"2*w + 1", w, 2.0 * w + 1.0},
        {"w^3", w, w * w * w},
        {"(1 - w)^2", w, (1.0 - w) * (1.0 - w)},
        {"1/(1 - w/2)", w, 1.0 / (1.0 - w / 2.0)},
        {"exp(w)", w, std::exp(w)},
        {"i*w", w, cplx(0, 1) * w},
        {"w^2 - 3*w + 2", w, w * w - 3.0 * w + 2.0},
        {"exp(2*w) / (w + 1)", w, std::exp(2.0 * w) / (w + 1.0)},
        {"-w + (-2)", w, -w - 2.0},
    };
    for (const auto& c : cases) {
        ExprPtr e = parse_expression(c.text);
        CHECK_MESSAGE(std::abs(ev(e, c.w) - c.want) < 1e-12 * (1.0 + std::abs(c.want)), c.text);
    }
}

TEST_CASE("whitespace does not matter") {
    cplx w(1.2, 0.5);
    ExprPtr a = parse_expression("2*w^2+exp(w)/3");
    ExprPtr b = parse_expression("  2 * w ^ 2 + exp( w ) / 3 ");
    CHECK(std::abs(ev(a, w) - ev(b, w)) < 1e-14);
}

TEST_CASE("logw uses the principal branch") {
    ExprPtr e = parse_expression("logw");
    cplx w(2.0, 1.0);
    CHECK(std::abs(ev(e, w) - std::log(w)) < 1e-12);
    cplx wm(-2.0, 1e-9);
    CHECK(ev(e, wm).imag() == doctest::Approx(M_PI).epsilon(1e-6));
}

TEST_CASE("series symbol binds the provided series") {
    auto s = std::make_shared<LogSeries>(polynomial_series({cplx(1, 0), cplx(0, 0), cplx(3, 0)}));
    ExprPtr e = parse_expression("exp(S) + w", s);
    cplx w(0.3, 0.1);
    cplx want = std::exp(1.0 + 3.0 * w * w) + w;
    CHECK(std::abs(ev(e, w) - want) < 1e-10);
    CHECK_THROWS_AS(parse_expression("S + 1"), SchemaError);  // no bound series
}

TEST_CASE("malformed inputs raise SchemaError") {
    for (const char* bad : {"", "w +", "(w", "w ^ x", "exp()", "2 ** w", "q", "w^1.5"})
        CHECK_THROWS_AS(parse_expression(bad), SchemaError);
}

TEST_CASE("symbolic derivative matches finite differences") {
    std::vector<const char*> exprs = {
        "w^4 - 2*w + 5",
        "exp(w)",
        "exp(w^2/2)",
        "1/(1 - w/4)",
        "w*exp(-w) + w^2",
        "logw",
        "exp(w) / (2 + w)",
    };
    std::vector<cplx> pts = {cplx(0.8, 0.0), cplx(0.5, 0.6), cplx(-0.7, 0.2)};
    for (const char* t : exprs) {
        ExprPtr e = parse_expression(t);
        ExprPtr d = expr_diff_w(e);
        for (const cplx& w : pts) {
            cplx sym = ev(d, w);
            cplx num = fd_diff(e, w);
            CHECK_MESSAGE(std::abs(sym - num) < 1e-6 * (1.0 + std::abs(sym)),
                          t << " at " << w.real() << "+" << w.imag() << "i");
        }
    }
}

TEST_CASE("derivative of a series leaf differentiates the series") {
    // trailing zero marks the truncation exact, so evaluation has no radius cap
    auto s = std::make_shared<LogSeries>(
        polynomial_series({cplx(2, 0), cplx(1, 0), cplx(-3, 0), cplx(0, 0)}));
    ExprPtr e = Expr::series_leaf(s);
    ExprPtr d = expr_diff_w(e);
    cplx w(0.4, -0.2);
    CHECK(std::abs(ev(d, w) - (1.0 - 6.0 * w)) < 1e-10);
}

TEST_CASE("expr_to_string round-trips through the parser") {
    for (const char* t : {"w^3 + 2*w", "exp(w^2/2)", "1/(1 - w/2)", "exp(w)/(2 + w)"}) {
        ExprPtr e = parse_expression(t);
        ExprPtr r = parse_expression(expr_to_string(*e));
        cplx w(0.6, 0.3);
        CHECK(std::abs(ev(e, w) - ev(r, w)) < 1e-12 * (1.0 + std::abs(ev(e, w))));
    }
}

TEST_CASE("evaluation stays in the log domain for huge exponentials") {
    ExprPtr e = parse_expression("exp(w^2/2)");
    cplx w(200.0, 0.0);
    LogComplex v = expr_eval(*e, w);
    CHECK(v.log_mag == doctest::Approx(20000.0));
}
