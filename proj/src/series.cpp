#include "ngt/series.hpp"

#include <algorithm>
#include <cmath>

#include "ngt/errors.hpp"

namespace ngt {

LogSeries::LogSeries(std::vector<LogComplex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(LogComplex::zero());
    compute_residual_radius();
}

long LogSeries::degree() const {
    for (long n = long(coeffs_.size()) - 1; n >= 0; --n)
        if (!coeffs_[n].is_zero()) return n;
    return -1;
}

void LogSeries::compute_residual_radius() {
    // Geometric majorant from the last 32 coefficients: the per-step log-ratio
    // rho bounds the tail by |a_N| R^N q/(1-q), q = exp(rho + log R).
    const long N = long(coeffs_.size()) - 1;
    long deg = degree();
    if (deg < 0) { residual_radius_ = std::numeric_limits<double>::infinity(); return; }
    // Trailing zeros mean the truncation is exact.
    if (deg < N) { residual_radius_ = std::numeric_limits<double>::infinity(); return; }

    double rho = kNegInf;
    long lo = std::max<long>(0, N - 32);
    for (long n = lo; n < N; ++n) {
        if (coeffs_[n].is_zero() || coeffs_[n + 1].is_zero()) continue;
        rho = std::max(rho, coeffs_[n + 1].log_mag - coeffs_[n].log_mag);
    }
    if (rho == kNegInf) { residual_radius_ = std::numeric_limits<double>::infinity(); return; }

    auto tail_ok = [&](double log_R) {
        double lq = rho + log_R;
        if (lq >= -1e-12) return false;
        double log_tail = coeffs_[N].log_mag + double(N) * log_R + lq - std::log1p(-std::exp(lq));
        double log_max = max_term(log_R).second;
        return log_tail <= std::log(1e-6) + log_max;
    };

    double lo_lr = -60.0, hi_lr = 700.0;
    if (!tail_ok(lo_lr)) { residual_radius_ = 0.0; return; }
    if (tail_ok(hi_lr)) { residual_radius_ = std::exp(hi_lr); return; }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo_lr + hi_lr);
        (tail_ok(mid) ? lo_lr : hi_lr) = mid;
    }
    residual_radius_ = std::exp(lo_lr);
}

std::pair<long, double> LogSeries::max_term(double log_R) const {
    long best = -1;
    double best_v = kNegInf;
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        if (coeffs_[n].is_zero()) continue;
        double v = coeffs_[n].log_mag + double(n) * log_R;
        if (v >= best_v) { best_v = v; best = long(n); }
    }
    return {best, best_v};
}

LogComplex LogSeries::eval_polar(double log_abs_w, double arg_w) const {
    if (log_abs_w > std::log(residual_radius_))
        throw SeriesOutOfRange("series evaluated past its reliable radius");
    auto [idx, M] = max_term(log_abs_w);
    if (idx < 0) return LogComplex::zero();
    // Max-shifted accumulation in a fixed order keeps the sum deterministic.
    cplx acc(0.0, 0.0);
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        if (coeffs_[n].is_zero()) continue;
        double t = coeffs_[n].log_mag + double(n) * log_abs_w - M;
        if (t < -kAddCutoff) continue;
        acc += std::exp(t) * std::polar(1.0, coeffs_[n].arg + double(n) * arg_w);
    }
    double m = std::abs(acc);
    if (m == 0.0 || std::log(m) + M < M - 700.0) return LogComplex::zero();
    return LogComplex(M + std::log(m), std::arg(acc));
}

LogComplex LogSeries::eval(const cplx& w) const {
    double m = std::abs(w);
    if (m == 0.0) return coeff(0);
    return eval_polar(std::log(m), std::arg(w));
}

LogSeries LogSeries::derivative_w() const {
    if (coeffs_.size() <= 1) return LogSeries({LogComplex::zero()});
    std::vector<LogComplex> out(coeffs_.size() - 1);
    for (std::size_t n = 0; n + 1 < coeffs_.size(); ++n)
        out[n] = lc_scale(coeffs_[n + 1], double(n + 1));
    return LogSeries(std::move(out));
}

LogSeries LogSeries::derivative_z() const {
    // w^2 d/dw: coefficient n of the input lands at n+1 with factor n.
    std::vector<LogComplex> out(coeffs_.size() + 1, LogComplex::zero());
    for (std::size_t n = 1; n < coeffs_.size(); ++n)
        out[n + 1] = lc_scale(coeffs_[n], double(n));
    return LogSeries(std::move(out));
}

LogSeries LogSeries::shifted(long k) const {
    std::vector<LogComplex> out(coeffs_.size() + std::size_t(k), LogComplex::zero());
    for (std::size_t n = 0; n < coeffs_.size(); ++n) out[n + std::size_t(k)] = coeffs_[n];
    return LogSeries(std::move(out));
}

LogSeries LogSeries::add(const LogSeries& a, const LogSeries& b) {
    std::vector<LogComplex> out(std::max(a.size(), b.size()));
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = lc_add(a.coeff(n), b.coeff(n));
    return LogSeries(std::move(out));
}

LogSeries LogSeries::sub(const LogSeries& a, const LogSeries& b) {
    std::vector<LogComplex> out(std::max(a.size(), b.size()));
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = lc_sub(a.coeff(n), b.coeff(n));
    return LogSeries(std::move(out));
}

LogSeries LogSeries::scale(const LogSeries& a, const LogComplex& c) {
    std::vector<LogComplex> out(a.size());
    for (std::size_t n = 0; n < a.size(); ++n) out[n] = lc_mul(a.coeff(n), c);
    return LogSeries(std::move(out));
}

LogSeries LogSeries::mul(const LogSeries& a, const LogSeries& b, std::size_t max_terms) {
    std::size_t n_out = std::min(max_terms, a.size() + b.size() - 1);
    std::vector<LogComplex> out(n_out, LogComplex::zero());
    for (std::size_t n = 0; n < n_out; ++n) {
        // Max-shifted convolution at index n.
        double M = kNegInf;
        std::size_t i_lo = (n + 1 > b.size()) ? n + 1 - b.size() : 0;
        std::size_t i_hi = std::min(n, a.size() - 1);
        for (std::size_t i = i_lo; i <= i_hi; ++i) {
            const LogComplex &x = a.coeffs_[i], &y = b.coeffs_[n - i];
            if (x.is_zero() || y.is_zero()) continue;
            M = std::max(M, x.log_mag + y.log_mag);
        }
        if (M == kNegInf) continue;
        cplx acc(0.0, 0.0);
        for (std::size_t i = i_lo; i <= i_hi; ++i) {
            const LogComplex &x = a.coeffs_[i], &y = b.coeffs_[n - i];
            if (x.is_zero() || y.is_zero()) continue;
            double t = x.log_mag + y.log_mag - M;
            if (t < -kAddCutoff) continue;
            acc += std::exp(t) * std::polar(1.0, x.arg + y.arg);
        }
        double m = std::abs(acc);
        if (m >= kCancelEps) out[n] = LogComplex(M + std::log(m), std::arg(acc));
    }
    return LogSeries(std::move(out));
}

LogSeries LogSeries::div(const LogSeries& num, const LogSeries& den, std::size_t terms) {
    if (den.coeff(0).is_zero())
        throw DivisorDegenerate("series division: divisor has vanishing leading coefficient");
    LogComplex d0 = den.coeff(0);
    std::vector<LogComplex> q(terms, LogComplex::zero());
    for (std::size_t n = 0; n < terms; ++n) {
        LogComplex acc = num.coeff(n);
        for (std::size_t i = 0; i < n; ++i)
            acc = lc_sub(acc, lc_mul(q[i], den.coeff(n - i)));
        q[n] = lc_div(acc, d0);
    }
    return LogSeries(std::move(q));
}

LogSeries LogSeries::exp(const LogSeries& a, std::size_t terms) {
    // b' = a' b gives (n+1) b_{n+1} = sum_{m} (m+1) a_{m+1} b_{n-m}.
    std::vector<LogComplex> b(terms, LogComplex::zero());
    b[0] = lc_exp(a.coeff(0));
    for (std::size_t n = 0; n + 1 < terms; ++n) {
        LogComplex acc = LogComplex::zero();
        for (std::size_t m = 0; m <= n; ++m) {
            LogComplex am1 = a.coeff(m + 1);
            if (am1.is_zero() || b[n - m].is_zero()) continue;
            acc = lc_add(acc, lc_scale(lc_mul(am1, b[n - m]), double(m + 1)));
        }
        b[n + 1] = lc_scale(acc, 1.0 / double(n + 1));
    }
    return LogSeries(std::move(b));
}

LogSeries LogSeries::truncated_by_magnitude(double drop) const {
    double peak = kNegInf;
    for (const auto& c : coeffs_)
        if (!c.is_zero()) peak = std::max(peak, c.log_mag);
    long last = 0;
    for (long n = 0; n < long(coeffs_.size()); ++n)
        if (!coeffs_[n].is_zero() && coeffs_[n].log_mag > peak - drop) last = n;
    std::vector<LogComplex> out(coeffs_.begin(), coeffs_.begin() + last + 1);
    return LogSeries(std::move(out));
}

LogSeries gaussian_series(double sigma_sq, std::size_t terms) {
    std::vector<LogComplex> c(terms);
    for (std::size_t n = 0; n < terms; ++n)
        c[n] = LogComplex(-double(n) * double(n) / (2.0 * sigma_sq), 0.0);
    return LogSeries(std::move(c));
}

LogSeries exp_series(std::size_t terms) {
    std::vector<LogComplex> c(terms);
    for (std::size_t n = 0; n < terms; ++n)
        c[n] = LogComplex(-std::lgamma(double(n) + 1.0), 0.0);
    return LogSeries(std::move(c));
}

LogSeries polynomial_series(const std::vector<cplx>& coeffs) {
    std::vector<LogComplex> c(coeffs.size());
    for (std::size_t n = 0; n < coeffs.size(); ++n) c[n] = LogComplex::from_complex(coeffs[n]);
    return LogSeries(std::move(c));
}

LogSeries lacunary_series(double decay, std::size_t max_exponent) {
    std::size_t len = (std::size_t(1) << max_exponent) + 1;
    std::vector<LogComplex> c(len, LogComplex::zero());
    for (std::size_t m = 0; m <= max_exponent; ++m)
        c[std::size_t(1) << m] = LogComplex(-decay * double(m) * double(m), 0.0);
    return LogSeries(std::move(c));
}

} // namespace ngt
