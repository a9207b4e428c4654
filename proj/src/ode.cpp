#include "ngt/ode.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ngt/errors.hpp"
#include "ngt/operator_expansion.hpp"

namespace ngt {

void OdeSpec::validate() const {
    if (k < 1) throw SchemaError("ode: k must be >= 1");
    if (long(coefficients.size()) != k) throw SchemaError("ode: need exactly k coefficients");
    if (long(initial.size()) != k) throw SchemaError("ode: need exactly k initial values");
    if (long(terms) <= 4 * k) throw SchemaError("ode: terms must exceed 4k");
    bool any = false;
    for (const auto& v : initial) any = any || !v.is_zero();
    if (!any) throw SchemaError("ode: initial data all zero");
    if (s && (*s < 0 || *s >= k)) throw SchemaError("ode: s out of range");
    for (const auto& a : coefficients) {
        if (!a.has_series()) throw SchemaError("ode: every coefficient needs a series");
        if (a.series().residual_radius() < 1.0)
            throw SchemaError("ode: coefficient series unreliable on |w| <= 1");
    }
}

namespace {

long valuation(const std::vector<LogComplex>& c) {
    for (std::size_t n = 0; n < c.size(); ++n)
        if (!c[n].is_zero()) return long(n);
    return -1;
}

} // namespace

PuncturedFunction solve_series(const OdeSpec& ode) {
    ode.validate();
    const long k = ode.k;
    const long N = long(ode.terms);

    // Atilde_j coefficient arrays, j = 0..k with Atilde_k = 1.
    std::vector<std::vector<LogComplex>> c(std::size_t(k) + 1);
    for (long j = 0; j < k; ++j) c[std::size_t(j)] = ode.coefficients[std::size_t(j)].series().coeffs();
    c[std::size_t(k)] = {LogComplex::one()};

    std::vector<long> d(std::size_t(k) + 1, -1);
    long nu = -1;
    for (long j = 0; j <= k; ++j) {
        d[std::size_t(j)] = valuation(c[std::size_t(j)]);
        if (d[std::size_t(j)] >= 0) {
            long v = j + d[std::size_t(j)];
            if (nu < 0 || v < nu) nu = v;
        }
    }
    // Atilde_k = 1 always participates, so nu is defined and <= k.

    std::vector<LogComplex> b(std::size_t(N), LogComplex::zero());
    double fact = 1.0;
    for (long m = 0; m < k; ++m) {
        if (m > 0) fact *= double(m);
        b[std::size_t(m)] = lc_scale(ode.initial[std::size_t(m)], 1.0 / fact);
    }

    // E_n = sum_{j,m} c_{j, n-j-m} rising(m, j) b_m. The highest coefficient
    // touched is m_t = n - nu; equations with m_t < k only involve seeds and
    // act as consistency constraints on the initial data.
    auto accumulate = [&](long n, long m_cap, LogComplex& sum, double& scale) {
        for (long j = 0; j <= k; ++j) {
            const auto& cj = c[std::size_t(j)];
            if (cj.empty()) continue;
            long m_hi = std::min(m_cap, n - j);
            long m_lo = std::max<long>(0, n - j - (long(cj.size()) - 1));
            for (long m = m_lo; m <= m_hi; ++m) {
                const LogComplex& co = cj[std::size_t(n - j - m)];
                if (co.is_zero() || b[std::size_t(m)].is_zero()) continue;
                double rf = rising_factorial(double(m), j);
                if (rf == 0.0) continue;
                LogComplex t = lc_scale(lc_mul(co, b[std::size_t(m)]), rf);
                scale = std::max(scale, t.log_mag);
                sum = lc_add(sum, t);
            }
        }
    };

    const double kConstraintTol = std::log(1e-6);
    for (long n = 0; n - nu < N; ++n) {
        long m_t = n - nu;
        if (m_t < k) {
            // Constraint on the seeds only.
            LogComplex E = LogComplex::zero();
            double scale = kNegInf;
            accumulate(n, std::min(m_t, k - 1), E, scale);
            if (!E.is_zero() && scale > kNegInf && E.log_mag > scale + kConstraintTol)
                throw RecurrenceBreakdown(n, "seed constraint violated at power " +
                                                 std::to_string(n));
            continue;
        }
        // Pivot: the multiplier of b_{m_t} collects every j with j + d_j = nu.
        LogComplex pivot = LogComplex::zero();
        for (long j = 0; j <= std::min(nu, k); ++j) {
            const auto& cj = c[std::size_t(j)];
            long l = nu - j;
            if (l < 0 || l >= long(cj.size()) || cj[std::size_t(l)].is_zero()) continue;
            double rf = rising_factorial(double(m_t), j);
            if (rf == 0.0) continue;
            pivot = lc_add(pivot, lc_scale(cj[std::size_t(l)], rf));
        }
        LogComplex rest = LogComplex::zero();
        double scale = kNegInf;
        accumulate(n, m_t - 1, rest, scale);
        if (pivot.is_zero()) {
            if (rest.is_zero() || (scale > kNegInf && rest.log_mag <= scale + kConstraintTol)) {
                // Non-unique index: keep the branch fixed by the seeds.
                b[std::size_t(m_t)] = LogComplex::zero();
                continue;
            }
            throw RecurrenceBreakdown(m_t, "vanishing leading term at index " +
                                               std::to_string(m_t));
        }
        b[std::size_t(m_t)] = lc_neg(lc_div(rest, pivot));
    }

    // Residual recomputation over the trustworthy prefix.
    const double kResidualTol = std::log(1e-8);
    for (long n = 0; n - nu <= N - 2 * k && n - nu < N; ++n) {
        LogComplex E = LogComplex::zero();
        double scale = kNegInf;
        accumulate(n, std::min(n, N - 1), E, scale);
        if (!E.is_zero() && scale > kNegInf && E.log_mag > scale + kResidualTol)
            throw ResidualTooLarge("solution residual too large at power " + std::to_string(n));
    }

    return PuncturedFunction::from_series(ode.coefficients[0].z0(), LogSeries(std::move(b)),
                                          std::nullopt, "solution");
}

LogComplex ode_residual_at(const std::vector<PuncturedFunction>& coeffs, long k,
                           const PuncturedFunction& f, const cplx& w) {
    LogComplex sum = f.differentiate(k, true).eval_omega(w);
    for (long j = 0; j < k; ++j) {
        LogComplex a = coeffs[std::size_t(j)].eval_omega(w);
        if (a.is_zero()) continue;
        sum = lc_add(sum, lc_mul(a, f.differentiate(j, true).eval_omega(w)));
    }
    return sum;
}

PuncturedFunction manufacture_coefficient(const PuncturedFunction& f,
                                          const std::map<long, PuncturedFunction>& others,
                                          long s, long k) {
    if (s < 0 || s >= k) throw SchemaError("manufacture: s out of range");
    for (const auto& [j, a] : others) {
        if (j < 0 || j >= k || j == s) throw SchemaError("manufacture: bad coefficient index");
        (void)a;
    }
    std::vector<PuncturedFunction> fd;
    fd.reserve(std::size_t(k) + 1);
    for (long j = 0; j <= k; ++j) fd.push_back(f.differentiate(j, true));

    bool series_route = f.has_series();
    for (const auto& [j, a] : others) series_route = series_route && a.has_series();

    PuncturedFunction result = [&]() -> PuncturedFunction {
        if (series_route) {
            std::size_t len = f.series().size();
            LogSeries num = fd[std::size_t(k)].series();
            for (const auto& [j, a] : others)
                num = LogSeries::add(
                    num, LogSeries::mul(a.series(), fd[std::size_t(j)].series(), len + 8));
            const LogSeries& den = fd[std::size_t(s)].series();
            if (den.degree() < 0) throw DivisorDegenerate("manufacture: f^(s) is identically zero");
            if (!den.coeff(0).is_zero()) {
                LogSeries q = LogSeries::div(LogSeries::scale(num, LogComplex::from_real(-1.0)),
                                             den, len);
                return PuncturedFunction::from_series(f.z0(), std::move(q), std::nullopt,
                                                      "A" + std::to_string(s));
            }
        }
        // Closed-form ratio route.
        if (!f.has_closed_form())
            throw DivisorDegenerate("manufacture: series division impossible and no closed form");
        ExprPtr num = fd[std::size_t(k)].closed_form();
        for (const auto& [j, a] : others) {
            if (!a.has_closed_form())
                throw DivisorDegenerate("manufacture: coefficient lacks a closed form");
            num = Expr::add(num, Expr::mul(a.closed_form(), fd[std::size_t(j)].closed_form()));
        }
        ExprPtr ratio = Expr::neg(Expr::div(num, fd[std::size_t(s)].closed_form()));
        return PuncturedFunction::from_expr(f.z0(), ratio, FunctionKind::Meromorphic,
                                            ZeroPoleLedger{}, "A" + std::to_string(s));
    }();

    // By construction f solves the finished equation; spot-check it.
    std::vector<PuncturedFunction> coeffs;
    for (long j = 0; j < k; ++j) {
        if (j == s) coeffs.push_back(result);
        else {
            auto it = others.find(j);
            coeffs.push_back(it != others.end()
                                 ? it->second
                                 : PuncturedFunction::from_expr(f.z0(), Expr::constant(cplx(0, 0))));
        }
    }
    double R = 2.0;
    R = std::min(R, 0.45 * f.reliable_radius());
    R = std::min(R, 0.45 * result.reliable_radius());
    for (const auto& [j, a] : others) { (void)j; R = std::min(R, 0.45 * a.reliable_radius()); }
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    for (int i = 0; i < 32; ++i) {
        cplx w = std::polar(R, ang(rng));
        LogComplex resid = ode_residual_at(coeffs, k, f, w);
        double scale = fd[std::size_t(k)].eval_omega(w).log_mag;
        for (long j = 0; j < k; ++j) {
            LogComplex t = lc_mul(coeffs[std::size_t(j)].eval_omega(w),
                                  fd[std::size_t(j)].eval_omega(w));
            scale = std::max(scale, t.log_mag);
        }
        if (!resid.is_zero() && resid.log_mag > scale + std::log(1e-6))
            throw ResidualTooLarge("manufactured equation residual too large");
    }
    return result;
}

} // namespace ngt
