#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>
#include <random>

#include "ngt/catalog.hpp"
#include "ngt/errors.hpp"
#include "ngt/function.hpp"

using namespace ngt;

namespace {

const cplx kZ0(0.0, 0.0);

bool lc_close(const LogComplex& a, const LogComplex& b, double tol = 1e-8) {
    if (a.is_zero() && b.is_zero()) return true;
    return lc_logmag_rel_diff(a, b) <= tol &&
           std::fabs(wrap_angle(a.arg - b.arg)) <= 1e-6;
}

} // namespace

TEST_CASE("coordinate maps are mutually inverse") {
    cplx z0(1.0, -2.0);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int k = 0; k < 100; ++k) {
        cplx z(d(rng), d(rng));
        if (std::abs(z - z0) < 1e-6) continue;
        cplx w = omega_of_z(z0, z);
        CHECK(std::abs(z_of_omega(z0, w) - z) < 1e-12 * (1.0 + std::abs(z)));
    }
}

TEST_CASE("construction demands a representation and a consistent ledger") {
    CHECK_THROWS_AS(PuncturedFunction(kZ0, nullptr, nullptr, std::nullopt,
                                      FunctionKind::Analytic),
                    ConsistencyError);
    ZeroPoleLedger bad;
    bad.zeros = {{cplx(1, 0), 0}};
    CHECK_THROWS_AS(PuncturedFunction::from_expr(kZ0, Expr::omega(), FunctionKind::Analytic, bad),
                    LedgerError);
    ZeroPoleLedger dup;
    dup.poles = {{cplx(1, 0), 1}, {cplx(1, 0), 2}};
    CHECK_THROWS_AS(PuncturedFunction::from_expr(kZ0, Expr::omega(), FunctionKind::Meromorphic, dup),
                    LedgerError);
    ZeroPoleLedger both;
    both.zeros = {{cplx(1, 0), 1}};
    both.poles = {{cplx(1, 0), 1}};
    CHECK_THROWS_AS(PuncturedFunction::from_expr(kZ0, Expr::omega(), FunctionKind::Meromorphic, both),
                    LedgerError);
    ZeroPoleLedger ap;
    ap.poles = {{cplx(1, 0), 1}};
    CHECK_THROWS_AS(PuncturedFunction::from_expr(kZ0, Expr::omega(), FunctionKind::Analytic, ap),
                    LedgerError);
}

TEST_CASE("closed form and series are cross-checked at construction") {
    auto good = std::make_shared<LogSeries>(exp_series(600));
    CHECK_NOTHROW(PuncturedFunction(kZ0, Expr::exp(Expr::omega()), good, std::nullopt,
                                    FunctionKind::Analytic));
    auto wrong = std::make_shared<LogSeries>(gaussian_series(1.0, 200));
    CHECK_THROWS_AS(PuncturedFunction(kZ0, Expr::exp(Expr::omega()), wrong, std::nullopt,
                                      FunctionKind::Analytic),
                    ConsistencyError);
}

TEST_CASE("eval_z composes eval_omega with the coordinate map") {
    PuncturedFunction f = catalog_function("exp_w");
    cplx z(0.2, -0.3);
    LogComplex a = f.eval_z(z);
    LogComplex b = f.eval_omega(omega_of_z(f.z0(), z));
    CHECK(a.log_mag == b.log_mag);
    CHECK(a.arg == b.arg);
    CHECK_THROWS_AS(f.eval_z(f.z0()), EvaluationAtSingularity);
}

TEST_CASE("second z-derivative of exp(w) is (w^4 + 2 w^3) e^w") {
    PuncturedFunction f = catalog_function("exp_w");
    PuncturedFunction d2 = f.differentiate(2, true);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    for (int k = 0; k < 32; ++k) {
        cplx w(d(rng), d(rng));
        if (std::abs(w) < 0.1) continue;
        cplx want = (std::pow(w, 4) + 2.0 * std::pow(w, 3)) * std::exp(w);
        CHECK(lc_close(d2.eval_omega(w), LogComplex::from_complex(want), 1e-7));
    }
}

TEST_CASE("differentiate twice equals the second derivative") {
    for (const char* name : {"exp_w", "poly3", "mobius", "rat03"}) {
        PuncturedFunction f = catalog_function(name);
        PuncturedFunction a = f.differentiate(1, true).differentiate(1, true);
        PuncturedFunction b = f.differentiate(2, true);
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> d(-1.5, 1.5);
        for (int k = 0; k < 16; ++k) {
            cplx w(d(rng), d(rng));
            if (std::abs(w) < 0.2) continue;
            LogComplex va = a.eval_omega(w), vb = b.eval_omega(w);
            if (va.is_zero() && vb.is_zero()) continue;
            CHECK_MESSAGE(lc_close(va, vb, 1e-8), name);
        }
    }
}

TEST_CASE("derivatives keep the pole ledger with deepened multiplicities") {
    PuncturedFunction f = catalog_function("mobius");  // pole at w = -3, mult 1
    PuncturedFunction d = f.differentiate(2, true);
    REQUIRE(d.ledger().has_value());
    REQUIRE(d.ledger()->poles.size() == 1);
    CHECK(d.ledger()->poles[0].location == cplx(-3.0, 0.0));
    CHECK(d.ledger()->poles[0].mult == 3);
    CHECK(d.ledger()->pole_complete);
    CHECK(d.ledger()->zeros.empty());  // zeros move; the list is dropped
}

TEST_CASE("invert_to_plane is an involution on evaluations") {
    for (const char* name : {"exp_w", "gaussian", "mobius", "pole_rich"}) {
        PuncturedFunction f = catalog_function(name);
        PuncturedFunction g = f.invert_to_plane().invert_to_plane();
        for (double th : {0.1, 1.7, 3.9}) {
            cplx w = std::polar(1.3, th);
            CHECK(lc_close(f.eval_omega(w), g.eval_omega(w), 1e-12));
        }
    }
}

TEST_CASE("reliable radius distinguishes closed forms from truncations") {
    CHECK(std::isinf(catalog_function("exp_w").reliable_radius()));
    PuncturedFunction s = PuncturedFunction::from_series(kZ0, gaussian_series(1.0, 40));
    CHECK(std::isfinite(s.reliable_radius()));
    CHECK(s.reliable_radius() > 0.0);
}

TEST_CASE("every catalog entry constructs and evaluates") {
    for (const std::string& name : catalog_names()) {
        PuncturedFunction f = catalog_function(name);
        CHECK(f.name() == name);
        double R = std::min(2.0, 0.5 * f.reliable_radius());
        LogComplex v = f.eval_omega(std::polar(R, 0.7));
        CHECK((v.is_zero() || std::isfinite(v.log_mag)));
    }
    CHECK_THROWS_AS(catalog_function("nope"), SchemaError);
}

TEST_CASE("reciprocal swaps ledger roles") {
    PuncturedFunction f = catalog_function("mobius");
    PuncturedFunction r = reciprocal(f);
    REQUIRE(r.ledger().has_value());
    CHECK(r.ledger()->zeros.size() == 1);
    CHECK(r.ledger()->zeros[0].location == cplx(-3.0, 0.0));
    CHECK(r.ledger()->poles.size() == 1);
    CHECK(r.ledger()->poles[0].location == cplx(2.0, 0.0));
    cplx w(0.4, 0.9);
    CHECK(lc_close(r.eval_omega(w), lc_div(LogComplex::one(), f.eval_omega(w)), 1e-12));
}
