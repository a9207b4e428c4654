#include "ngt/catalog.hpp"

#include <cmath>

#include "ngt/errors.hpp"

namespace ngt {

namespace {

const cplx kZ0(0.0, 0.0);

ExprPtr linear_factor(const cplx& root) {
    // (w - root)
    return Expr::sub(Expr::omega(), Expr::constant(root));
}

PuncturedFunction make_rational(const std::vector<LedgerEntry>& zeros,
                                const std::vector<LedgerEntry>& poles, std::string name) {
    ExprPtr num = Expr::constant(cplx(1.0, 0.0));
    for (const auto& z : zeros)
        num = Expr::mul(num, Expr::ipow(linear_factor(z.location), z.mult));
    ExprPtr e = num;
    for (const auto& p : poles)
        e = Expr::div(e, Expr::ipow(linear_factor(p.location), p.mult));
    ZeroPoleLedger led;
    led.zeros = zeros;
    led.poles = poles;
    led.zero_complete = true;
    led.pole_complete = true;
    FunctionKind kind = poles.empty() ? FunctionKind::Analytic : FunctionKind::Meromorphic;
    return PuncturedFunction::from_expr(kZ0, e, kind, std::move(led), std::move(name));
}

PuncturedFunction make_monomial(long d) {
    ZeroPoleLedger led;
    led.zeros = {{cplx(0.0, 0.0), d}};
    led.zero_complete = true;
    led.pole_complete = true;
    return PuncturedFunction::from_expr(kZ0, Expr::ipow(Expr::omega(), d),
                                        FunctionKind::Analytic, std::move(led),
                                        "rational_d" + std::to_string(d));
}

// Deterministic rational family rat01..rat08: zero/pole moduli stay below 8,
// well inside every measurement circle |w| = e^{e^u}, u >= 1.
PuncturedFunction make_rat(int k) {
    int dz = 1 + (k % 3);
    int dp = 1 + ((k + 1) % 2);
    std::vector<LedgerEntry> zeros, poles;
    for (int j = 0; j < dz; ++j)
        zeros.push_back({std::polar(1.2 + 0.45 * double(k + j),
                                    2.0 * M_PI * double(k + 3 * j) / 17.0),
                         1 + (j == 0 && k % 4 == 0 ? 1 : 0)});
    for (int j = 0; j < dp; ++j)
        poles.push_back({std::polar(1.5 + 0.6 * double(k + j),
                                    -2.0 * M_PI * double(2 * k + j) / 19.0),
                         1});
    char buf[8];
    std::snprintf(buf, sizeof buf, "rat%02d", k);
    return make_rational(zeros, poles, buf);
}

PuncturedFunction make_pole_rich() {
    ExprPtr e = Expr::constant(cplx(1.0, 0.0));
    ZeroPoleLedger led;
    for (int p = 1; p <= 12; ++p) {
        cplx loc = std::exp(double(p));
        e = Expr::div(e, Expr::sub(Expr::constant(cplx(1.0, 0.0)),
                                   Expr::mul(Expr::omega(),
                                             Expr::constant(std::exp(-double(p))))));
        led.poles.push_back({loc, 1});
    }
    led.zero_complete = true;
    led.pole_complete = true;
    return PuncturedFunction::from_expr(kZ0, e, FunctionKind::Meromorphic, std::move(led),
                                        "pole_rich");
}

PuncturedFunction make_zeros_en() {
    ExprPtr e = Expr::constant(cplx(1.0, 0.0));
    ZeroPoleLedger led;
    for (int n = 1; n <= 14; ++n) {
        e = Expr::mul(e, Expr::sub(Expr::constant(cplx(1.0, 0.0)),
                                   Expr::mul(Expr::omega(),
                                             Expr::constant(std::exp(-double(n))))));
        led.zeros.push_back({cplx(std::exp(double(n)), 0.0), 1});
    }
    led.zero_complete = true;
    led.pole_complete = true;
    return PuncturedFunction::from_expr(kZ0, e, FunctionKind::Analytic, std::move(led),
                                        "zeros_en");
}

PuncturedFunction make_poly3() {
    // 1 + 2w + w^3; the zero set is not declared, so the ledger stays absent.
    ExprPtr e = Expr::add(Expr::add(Expr::constant(cplx(1.0, 0.0)),
                                    Expr::mul(Expr::constant(cplx(2.0, 0.0)), Expr::omega())),
                          Expr::ipow(Expr::omega(), 3));
    LogSeries s = polynomial_series({cplx(1, 0), cplx(2, 0), cplx(0, 0), cplx(1, 0)});
    return PuncturedFunction(kZ0, e, std::make_shared<LogSeries>(std::move(s)), std::nullopt,
                             FunctionKind::Analytic, "poly3");
}

PuncturedFunction make_exp_w() {
    ExprPtr e = Expr::exp(Expr::omega());
    ZeroPoleLedger led;
    led.zero_complete = true;  // e^w never vanishes
    led.pole_complete = true;
    return PuncturedFunction(kZ0, e, std::make_shared<LogSeries>(exp_series(2400)),
                             std::move(led), FunctionKind::Analytic, "exp_w");
}

PuncturedFunction make_gaussian() {
    auto s = std::make_shared<LogSeries>(gaussian_series(1.0, 2000));
    // The leaf closed form is the same data; it exists so that expression-level
    // machinery (log-derivative checks, manufacture) applies uniformly.
    return PuncturedFunction(kZ0, Expr::series_leaf(s), s, std::nullopt,
                             FunctionKind::Analytic, "gaussian");
}

PuncturedFunction make_exp_gaussian() {
    auto h = std::make_shared<LogSeries>(gaussian_series(1.0, 400));
    ZeroPoleLedger led;
    led.zero_complete = true;
    led.pole_complete = true;
    return PuncturedFunction::from_expr(kZ0, Expr::exp(Expr::series_leaf(h)),
                                        FunctionKind::Analytic, std::move(led),
                                        "exp_gaussian");
}

PuncturedFunction make_constant() {
    ZeroPoleLedger led;
    led.zero_complete = true;
    led.pole_complete = true;
    return PuncturedFunction::from_expr(kZ0, Expr::constant(cplx(3.0, 0.0)),
                                        FunctionKind::Analytic, std::move(led), "constant");
}

} // namespace

std::vector<std::string> catalog_names() {
    std::vector<std::string> v{"constant",  "identity_w", "rational_d1", "rational_d2",
                               "rational_d3", "poly3",    "exp_w",       "gaussian",
                               "exp_gaussian", "lacunary", "pole_rich",   "zeros_en",
                               "mobius"};
    for (int k = 1; k <= 8; ++k) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "rat%02d", k);
        v.push_back(buf);
    }
    return v;
}

PuncturedFunction catalog_function(const std::string& name) {
    if (name == "constant") return make_constant();
    if (name == "identity_w") {
        ZeroPoleLedger led;
        led.zeros = {{cplx(0.0, 0.0), 1}};
        led.zero_complete = true;
        led.pole_complete = true;
        return PuncturedFunction::from_expr(kZ0, Expr::omega(), FunctionKind::Analytic,
                                            std::move(led), "identity_w");
    }
    if (name == "rational_d1") return make_monomial(1);
    if (name == "rational_d2") return make_monomial(2);
    if (name == "rational_d3") return make_monomial(3);
    if (name == "poly3") return make_poly3();
    if (name == "exp_w") return make_exp_w();
    if (name == "gaussian") return make_gaussian();
    if (name == "exp_gaussian") return make_exp_gaussian();
    if (name == "lacunary")
        return PuncturedFunction::from_series(kZ0, lacunary_series(0.5, 11), std::nullopt,
                                              "lacunary");
    if (name == "pole_rich") return make_pole_rich();
    if (name == "zeros_en") return make_zeros_en();
    if (name == "mobius")
        return make_rational({{cplx(2.0, 0.0), 1}}, {{cplx(-3.0, 0.0), 1}}, "mobius");
    if (name.size() == 5 && name.compare(0, 3, "rat") == 0) {
        int k = (name[3] - '0') * 10 + (name[4] - '0');
        if (k >= 1 && k <= 8) return make_rat(k);
    }
    throw SchemaError("unknown catalog entry: " + name);
}

PuncturedFunction reciprocal(const PuncturedFunction& f) {
    if (!f.has_closed_form())
        throw UnsupportedNode("reciprocal needs a closed form");
    ExprPtr e = Expr::div(Expr::constant(cplx(1.0, 0.0)), f.closed_form());
    ZeroPoleLedger led;
    bool analytic = false;
    if (f.ledger()) {
        led.zeros = f.ledger()->poles;
        led.poles = f.ledger()->zeros;
        led.zero_complete = f.ledger()->pole_complete;
        led.pole_complete = f.ledger()->zero_complete;
        analytic = led.pole_complete && led.poles.empty();
    }
    return PuncturedFunction::from_expr(
        f.z0(), e, analytic ? FunctionKind::Analytic : FunctionKind::Meromorphic,
        f.ledger() ? std::optional<ZeroPoleLedger>(std::move(led)) : std::nullopt,
        f.name().empty() ? "" : "1/(" + f.name() + ")");
}

} // namespace ngt
