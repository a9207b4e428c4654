#ifndef NGT_SERIES_HPP
#define NGT_SERIES_HPP

#include <vector>

#include "ngt/log_complex.hpp"

namespace ngt {

// Truncated power series sum a_n w^n with log-domain coefficients.
// residual_radius is the largest |w| at which the geometric tail bound
// (from the last 32 coefficients) stays below 1e-6 of the maximum term;
// evaluation beyond it raises SeriesOutOfRange.
class LogSeries {
public:
    LogSeries() = default;
    explicit LogSeries(std::vector<LogComplex> coeffs);

    const std::vector<LogComplex>& coeffs() const { return coeffs_; }
    std::size_t size() const { return coeffs_.size(); }
    long degree() const; // index of last nonzero coefficient, -1 if all zero
    double residual_radius() const { return residual_radius_; }

    LogComplex coeff(std::size_t n) const {
        return n < coeffs_.size() ? coeffs_[n] : LogComplex::zero();
    }

    // Evaluate at w; throws SeriesOutOfRange past residual_radius.
    LogComplex eval(const cplx& w) const;
    LogComplex eval_polar(double log_abs_w, double arg_w) const;

    // log of the maximum term |a_n| R^n and its index, at |w| = R.
    // Ties break toward the larger index.
    std::pair<long, double> max_term(double log_R) const;

    LogSeries derivative_w() const;               // term-by-term d/dw
    LogSeries derivative_z() const;               // w^2 * d/dw (the d/dz realization)
    LogSeries shifted(long k) const;              // multiply by w^k (k >= 0)

    static LogSeries add(const LogSeries& a, const LogSeries& b);
    static LogSeries sub(const LogSeries& a, const LogSeries& b);
    static LogSeries mul(const LogSeries& a, const LogSeries& b, std::size_t max_terms);
    static LogSeries scale(const LogSeries& a, const LogComplex& c);
    // Power-series division; the divisor's lowest nonzero coefficient must sit
    // at index 0, otherwise DivisorDegenerate.
    static LogSeries div(const LogSeries& num, const LogSeries& den, std::size_t terms);
    // exp of a series with b(0) term included: exp(a0) * exp(a - a0) expanded
    // by the first-order recurrence.
    static LogSeries exp(const LogSeries& a, std::size_t terms);

    // Drop trailing coefficients whose log-magnitude is more than `drop` below
    // the largest one (keeps the series cheap inside convolutions).
    LogSeries truncated_by_magnitude(double drop = 400.0) const;

private:
    void compute_residual_radius();
    std::vector<LogComplex> coeffs_;
    double residual_radius_ = 0.0;
};

// Built-in coefficient generators.
LogSeries gaussian_series(double sigma_sq, std::size_t terms);          // a_n = exp(-n^2/(2 sigma_sq))
LogSeries exp_series(std::size_t terms);                                // a_n = 1/n!
LogSeries polynomial_series(const std::vector<cplx>& coeffs);
LogSeries lacunary_series(double decay, std::size_t max_exponent);      // a_{2^m} = exp(-decay m^2)

} // namespace ngt

#endif
