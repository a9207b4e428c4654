#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include "ngt/catalog.hpp"
#include "ngt/errors.hpp"
#include "ngt/growth.hpp"

using namespace ngt;

namespace {

// Synthetic table with a prescribed T column; the estimators only look at
// (u, column) pairs, so hand-built rows make exact oracles possible.
GrowthTable synthetic(double u_min, double u_max, int n,
                      const std::function<void(GrowthRow&)>& fill) {
    GrowthTable t;
    t.grid.u_min = u_min;
    t.grid.u_max = u_max;
    t.grid.points = n;
    for (double u : t.grid.u_values()) {
        GrowthRow row;
        row.u = u;
        row.r = std::exp(-std::exp(u));
        fill(row);
        t.rows.push_back(row);
    }
    return t;
}

} // namespace

TEST_CASE("logarithmic order of T = exp(sigma u) is sigma") {
    for (double sigma : {1.0, 2.0, 3.5}) {
        GrowthTable t = synthetic(1.0, 3.0, 48, [&](GrowthRow& row) {
            row.T = std::exp(sigma * row.u);
        });
        OrderEstimate est = estimate_order(t, 1, 2, Flavor::Upper, Source::T);
        CHECK(est.value == doctest::Approx(sigma).epsilon(1e-9));
        CHECK(est.ratio == doctest::Approx(sigma).epsilon(1e-9));
        OrderEstimate low = estimate_order(t, 1, 2, Flavor::Lower, Source::T);
        CHECK(low.value == doctest::Approx(sigma).epsilon(1e-9));
    }
}

TEST_CASE("[2,2] order from the M column") {
    // log M = exp(exp(2u)) gives log_3 M = 2u, so sigma_[2,2] = 2.
    GrowthTable t = synthetic(0.5, 1.6, 32, [&](GrowthRow& row) {
        row.log_M = std::exp(std::exp(2.0 * row.u));
    });
    OrderEstimate est = estimate_order(t, 2, 2, Flavor::Upper, Source::M);
    CHECK(est.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("central-index column drives the V source") {
    GrowthTable t = synthetic(1.0, 3.0, 48, [&](GrowthRow& row) {
        row.V = long(std::llround(std::exp(2.0 * row.u)));
    });
    OrderEstimate est = estimate_order(t, 1, 2, Flavor::Upper, Source::V);
    CHECK(est.value == doctest::Approx(2.0).epsilon(1e-3));  // rounding of V
}

TEST_CASE("logarithmic exponent of convergence subtracts one") {
    GrowthTable t = synthetic(1.0, 3.0, 48, [&](GrowthRow& row) {
        row.N_zeros = std::exp(2.0 * row.u);
        row.T = row.N_zeros;
    });
    OrderEstimate est = estimate_order(t, 1, 2, Flavor::Upper, Source::N_zeros);
    CHECK(est.value == doctest::Approx(1.0).epsilon(1e-9));
    // the same column through Source::T keeps the raw slope
    CHECK(estimate_order(t, 1, 2, Flavor::Upper, Source::T).value ==
          doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("slope recovery under a bounded oscillation") {
    // log T = a u + b + 0.1 sin(5u): the upper envelope rides the crests,
    // which are spaced well inside the fit window, so the slope stays near a.
    for (double a : {1.5, 2.0}) {
        GrowthTable t = synthetic(1.0, 4.0, 96, [&](GrowthRow& row) {
            row.T = std::exp(a * row.u + 0.3 + 0.1 * std::sin(5.0 * row.u));
        });
        OrderEstimate est = estimate_order(t, 1, 2, Flavor::Upper, Source::T);
        CHECK(std::fabs(est.value - a) < 0.05);
        OrderEstimate low = estimate_order(t, 1, 2, Flavor::Lower, Source::T);
        CHECK(low.value <= est.value + 0.02);
    }
}

TEST_CASE("a bounded column has order zero") {
    GrowthTable t = synthetic(1.0, 3.0, 48, [&](GrowthRow& row) { row.T = 0.8; });
    OrderEstimate est = estimate_order(t, 1, 2, Flavor::Upper, Source::T);
    CHECK(est.negative_growth);
    CHECK(est.value == 0.0);
}

TEST_CASE("estimator guards") {
    GrowthTable t = synthetic(1.0, 3.0, 48, [&](GrowthRow& row) { row.T = row.u; });
    CHECK_THROWS_AS(estimate_order(t, 0, 1, Flavor::Upper, Source::T), SchemaError);
    CHECK_THROWS_AS(estimate_order(t, 1, 3, Flavor::Upper, Source::T), SchemaError);
    CHECK_NOTHROW(estimate_order(t, 2, 3, Flavor::Upper, Source::T));
    GrowthTable small = synthetic(1.0, 3.0, 16, [&](GrowthRow& row) {
        row.T = row.u;
        if (row.u > 1.5) row.flags = "T:bad";
    });
    CHECK_THROWS_AS(estimate_order(small, 1, 2, Flavor::Upper, Source::T), InsufficientData);
    RadiusGrid bad;
    bad.u_min = 2.0;
    bad.u_max = 1.0;
    CHECK_THROWS_AS(bad.validate(), SchemaError);
    bad.u_min = 1.0;
    bad.u_max = 2.0;
    bad.points = 8;
    CHECK_THROWS_AS(bad.validate(), SchemaError);
}

TEST_CASE("type estimate and its clamp") {
    // T = tau exp(u) = tau log(1/r): logarithmic type tau at order 1.
    GrowthTable t = synthetic(1.0, 3.0, 48, [&](GrowthRow& row) {
        row.T = 2.5 * std::exp(row.u);
    });
    TypeEstimate est = estimate_type(t, 1.0, Flavor::Upper, Source::T);
    CHECK(est.value == doctest::Approx(2.5).epsilon(1e-9));
    CHECK_FALSE(est.clamped);
    TypeEstimate cl = estimate_type(t, 0.93, Flavor::Upper, Source::T);
    CHECK(cl.clamped);
    CHECK(cl.order_used == 1.0);
    CHECK(cl.value == doctest::Approx(2.5).epsilon(1e-9));
    CHECK_THROWS_AS(estimate_type(t, 0.5, Flavor::Upper, Source::T), OrderOutOfRange);
    CHECK_THROWS_AS(estimate_type(t, 1.0, Flavor::Upper, Source::V), SchemaError);
}

TEST_CASE("delta is the tail liminf of m/T") {
    GrowthTable t = synthetic(1.0, 3.0, 48, [&](GrowthRow& row) {
        row.T = std::exp(row.u);
        row.m = (0.5 + 0.1 * std::sin(row.u)) * row.T;
        row.N = row.T - row.m;
    });
    DeltaEstimate est = estimate_delta(t);
    // sin is decreasing toward u_max = 3, so the tail minimum sits there
    CHECK(est.value == doctest::Approx(0.5 + 0.1 * std::sin(3.0)).epsilon(1e-9));
    CHECK(est.lo <= est.value);
    CHECK(est.hi >= est.value);
}

TEST_CASE("sampled tables: schema line, column order, T monotone") {
    PuncturedFunction f = catalog_function("gaussian");
    RadiusGrid grid;
    grid.u_min = 1.0;
    grid.u_max = 2.2;
    grid.points = 24;
    GrowthTable t = sample_growth(f, grid);
    std::string csv = t.to_csv();
    CHECK(csv.rfind("# schema_version 1\nu,r,m,N,T,logM,V,N_zeros,flags\n", 0) == 0);
    CHECK(t.failed == 0);
    // T(r) is nondecreasing in r, so nondecreasing along increasing u
    for (std::size_t k = 1; k < t.rows.size(); ++k)
        CHECK(t.rows[k].T >= t.rows[k - 1].T - 1e-9);
    // log M dominates m for analytic functions
    for (const auto& row : t.rows)
        if (!std::isnan(row.log_M)) CHECK(row.m <= std::max(row.log_M, 0.0) + 1e-6);
}

TEST_CASE("derivative leaves the order estimate unchanged") {
    for (const char* name : {"exp_w", "gaussian"}) {
        PuncturedFunction f = catalog_function(name);
        PuncturedFunction fp = f.differentiate(1, true);
        RadiusGrid grid;
        grid.u_min = 1.0;
        grid.u_max = 4.0;
        grid.points = 32;
        SampleOptions opt;
        opt.with_V = false;
        opt.with_log_M = false;
        GrowthTable tf = sample_growth(f, grid, {}, opt);
        GrowthTable tp = sample_growth(fp, grid, {}, opt);
        for (auto pq : {std::pair<int, int>{1, 2}, {2, 2}}) {
            double a = estimate_order(tf, pq.first, pq.second, Flavor::Upper, Source::T).value;
            double b = estimate_order(tp, pq.first, pq.second, Flavor::Upper, Source::T).value;
            CHECK_MESSAGE(std::fabs(a - b) < 0.1, name << " (" << pq.first << "," << pq.second << ")");
        }
    }
}

TEST_CASE("reciprocal leaves T nearly unchanged") {
    PuncturedFunction f = catalog_function("mobius");
    PuncturedFunction g = reciprocal(f);
    RadiusGrid grid;
    grid.u_min = 1.0;
    grid.u_max = 2.2;
    grid.points = 24;
    SampleOptions opt;
    opt.with_V = false;
    opt.with_log_M = false;
    GrowthTable tf = sample_growth(f, grid, {}, opt);
    GrowthTable tg = sample_growth(g, grid, {}, opt);
    // first fundamental theorem: T(r, 1/f) = T(r, f) + O(1), with the
    // difference settling to a constant as r -> 0
    std::vector<double> diff;
    for (std::size_t k = 0; k < tf.rows.size(); ++k)
        diff.push_back(tg.rows[k].T - tf.rows[k].T);
    for (double d : diff) CHECK(std::fabs(d) < 1.0);
    double tail_min = diff.back(), tail_max = diff.back();
    for (std::size_t k = diff.size() / 2; k < diff.size(); ++k) {
        tail_min = std::min(tail_min, diff[k]);
        tail_max = std::max(tail_max, diff[k]);
    }
    CHECK(tail_max - tail_min < 0.02);
}

TEST_CASE("zero counting column: ledger and winding routes agree") {
    // zeros at |w| = e^{1.5}, e^{3.3}, e^{5.1}; the offsets keep them off the
    // annulus boundaries of the winding route
    ExprPtr e = Expr::constant(cplx(1.0, 0.0));
    ZeroPoleLedger led;
    for (double t : {1.5, 3.3, 5.1}) {
        e = Expr::mul(e, Expr::sub(Expr::constant(cplx(1.0, 0.0)),
                                   Expr::mul(Expr::omega(), Expr::constant(std::exp(-t)))));
        led.zeros.push_back({cplx(std::exp(t), 0.0), 1});
    }
    led.zero_complete = true;
    led.pole_complete = true;
    PuncturedFunction f = PuncturedFunction::from_expr(cplx(0, 0), e, FunctionKind::Analytic,
                                                       led, "three_zeros");
    RadiusGrid grid;
    grid.u_min = 1.0;
    grid.u_max = 2.0;
    grid.points = 16;
    std::vector<double> ledger = zero_counting_column(f, grid, 2.0);
    // strip the ledger to force the winding route
    PuncturedFunction g = PuncturedFunction::from_expr(f.z0(), f.closed_form());
    std::vector<double> winding = zero_counting_column(g, grid, 2.0);
    REQUIRE(ledger.size() == winding.size());
    for (std::size_t k = 0; k < ledger.size(); ++k) {
        // winding places each zero at the annulus midpoint, so the error per
        // zero is bounded by half the annulus width in log scale
        CHECK(std::fabs(ledger[k] - winding[k]) <= 0.1 * std::max(1.0, ledger[k]));
    }
}
