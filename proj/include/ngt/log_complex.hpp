#ifndef NGT_LOG_COMPLEX_HPP
#define NGT_LOG_COMPLEX_HPP

#include <cmath>
#include <complex>
#include <limits>

namespace ngt {

using cplx = std::complex<double>;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * M_PI);
    if (a <= -M_PI) a += 2.0 * M_PI;
    return a;
}

// A complex value stored as (log of modulus, argument) so that magnitudes
// like exp(exp(12)) stay representable. log_mag == -inf encodes zero and
// forces arg == 0.
struct LogComplex {
    double log_mag = kNegInf;
    double arg = 0.0;

    LogComplex() = default;
    LogComplex(double lm, double a) : log_mag(lm), arg(lm == kNegInf ? 0.0 : wrap_angle(a)) {}

    static LogComplex zero() { return LogComplex(); }
    static LogComplex one() { return LogComplex(0.0, 0.0); }

    static LogComplex from_complex(const cplx& z) {
        double m = std::abs(z);
        if (m == 0.0) return zero();
        return LogComplex(std::log(m), std::arg(z));
    }
    static LogComplex from_real(double x) {
        if (x == 0.0) return zero();
        return LogComplex(std::log(std::fabs(x)), x > 0 ? 0.0 : M_PI);
    }

    bool is_zero() const { return log_mag == kNegInf; }

    // Overflows for log_mag > ~709; callers that may exceed that must stay
    // in the log domain.
    cplx to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        return std::polar(std::exp(log_mag), arg);
    }
};

// Above this gap the smaller addend is below one ulp of the larger.
inline constexpr double kAddCutoff = 750.0;
// Relative cancellation threshold below which a sum is declared zero.
inline constexpr double kCancelEps = 1e-15;

inline LogComplex lc_mul(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero() || b.is_zero()) return LogComplex::zero();
    return LogComplex(a.log_mag + b.log_mag, a.arg + b.arg);
}

inline LogComplex lc_div(const LogComplex& a, const LogComplex& b) {
    // b == 0 yields +inf magnitude; the caller decides whether that is an error.
    if (a.is_zero()) return LogComplex::zero();
    return LogComplex(a.log_mag - b.log_mag, a.arg - b.arg);
}

inline LogComplex lc_neg(const LogComplex& a) {
    if (a.is_zero()) return a;
    return LogComplex(a.log_mag, a.arg + M_PI);
}

inline LogComplex lc_add(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const LogComplex& big = (a.log_mag >= b.log_mag) ? a : b;
    const LogComplex& sml = (a.log_mag >= b.log_mag) ? b : a;
    double d = sml.log_mag - big.log_mag;
    if (d < -kAddCutoff) return big;
    cplx s = 1.0 + std::exp(d) * std::polar(1.0, sml.arg - big.arg);
    double m = std::abs(s);
    if (m < kCancelEps) return LogComplex::zero();
    return LogComplex(big.log_mag + std::log(m), big.arg + std::arg(s));
}

inline LogComplex lc_sub(const LogComplex& a, const LogComplex& b) { return lc_add(a, lc_neg(b)); }

inline LogComplex lc_pow_int(const LogComplex& a, long n) {
    if (n == 0) return LogComplex::one();
    if (a.is_zero()) return n > 0 ? LogComplex::zero() : LogComplex(std::numeric_limits<double>::infinity(), 0.0);
    return LogComplex(a.log_mag * double(n), a.arg * double(n));
}

// exp of a log-domain value: needs the operand as an ordinary complex number,
// then the real part becomes the new log-magnitude directly.
inline LogComplex lc_exp(const LogComplex& a) {
    cplx w = a.to_complex();
    return LogComplex(w.real(), w.imag());
}

inline LogComplex lc_scale(const LogComplex& a, double s) {
    return lc_mul(a, LogComplex::from_real(s));
}

// Relative agreement of two values in log_mag, treating both-zero as equal.
inline double lc_logmag_rel_diff(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero() && b.is_zero()) return 0.0;
    if (a.is_zero() || b.is_zero()) return std::numeric_limits<double>::infinity();
    double scale = std::max({std::fabs(a.log_mag), std::fabs(b.log_mag), 1.0});
    return std::fabs(a.log_mag - b.log_mag) / scale;
}

} // namespace ngt

#endif
