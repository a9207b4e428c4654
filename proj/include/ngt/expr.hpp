#ifndef NGT_EXPR_HPP
#define NGT_EXPR_HPP

#include <memory>
#include <string>
#include <vector>

#include "ngt/log_complex.hpp"
#include "ngt/series.hpp"

namespace ngt {

// Closed-form expression tree over the variable w. The node set is fixed:
// general fractional powers and logs of arbitrary subexpressions are excluded
// so every representable form is single-valued away from the puncture
// (log-of-w uses the principal branch). A series leaf embeds a truncated
// power series, which lets manufactured coefficients stay in closed form.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Constant, Omega, Add, Mul, Div, IPow, Exp, LogW, SeriesLeaf };

    Kind kind;
    LogComplex cval;                               // Constant
    long power = 0;                                // IPow exponent
    std::shared_ptr<const LogSeries> series;       // SeriesLeaf
    std::vector<ExprPtr> children;

    static ExprPtr constant(const cplx& c);
    static ExprPtr constant_log(const LogComplex& c);
    static ExprPtr omega();
    static ExprPtr add(ExprPtr a, ExprPtr b);
    static ExprPtr sub(ExprPtr a, ExprPtr b);
    static ExprPtr mul(ExprPtr a, ExprPtr b);
    static ExprPtr div(ExprPtr a, ExprPtr b);
    static ExprPtr ipow(ExprPtr a, long n);
    static ExprPtr exp(ExprPtr a);
    static ExprPtr logw();
    static ExprPtr series_leaf(std::shared_ptr<const LogSeries> s);
    static ExprPtr neg(ExprPtr a);
};

// Evaluate at w (log-domain throughout; the exp node writes Re of its
// argument into log_mag directly and never exponentiates).
LogComplex expr_eval(const Expr& e, const cplx& w);

// Exact symbolic derivative with respect to w.
ExprPtr expr_diff_w(const ExprPtr& e);

// Parse the documented grammar: variable "w", optional series symbol "S",
// operators + - * / ^int, functions exp(...), logw, complex unit i.
// Whitespace-insensitive and locale-independent.
ExprPtr parse_expression(const std::string& text,
                         std::shared_ptr<const LogSeries> bound_series = nullptr);

std::string expr_to_string(const Expr& e);

} // namespace ngt

#endif
