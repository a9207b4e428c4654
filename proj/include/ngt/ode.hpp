#ifndef NGT_ODE_HPP
#define NGT_ODE_HPP

#include <map>
#include <optional>
#include <vector>

#include "ngt/function.hpp"

namespace ngt {

// f^(k) + A_{k-1} f^(k-1) + ... + A_0 f = 0, transported to the omega plane
// as sum_j Atilde_j(w) (w^2 D)^j g(w) = 0 with Atilde_k = 1.
struct OdeSpec {
    long k = 1;
    std::vector<PuncturedFunction> coefficients;  // A_0 .. A_{k-1}, series in w
    std::optional<long> s;                        // dominant index, informational
    std::vector<LogComplex> initial;              // g(0), g'(0), ..., g^{(k-1)}(0)
    std::size_t terms = 0;                        // truncation length N

    void validate() const;  // throws SchemaError
};

// Power-series solution by the forward recurrence on matching powers of w.
// Equations that only touch the seeded coefficients act as constraints;
// a violated constraint or a vanishing pivot raises RecurrenceBreakdown with
// the offending index. The returned function carries the solution series.
PuncturedFunction solve_series(const OdeSpec& ode);

// A_s = -(f^(k) + sum_{j != s} A_j f^(j)) / f^(s) with derivatives taken in z.
// Prefers series division (analytic result) when f^(s) has nonvanishing
// leading coefficient; otherwise falls back to a closed-form ratio
// (meromorphic kind, ledger incomplete). Verifies the residual at 32 points.
PuncturedFunction manufacture_coefficient(const PuncturedFunction& f,
                                          const std::map<long, PuncturedFunction>& others,
                                          long s, long k);

// Residual of the ODE at a point (log-domain), for checks.
LogComplex ode_residual_at(const std::vector<PuncturedFunction>& coeffs, long k,
                           const PuncturedFunction& f, const cplx& w);

} // namespace ngt

#endif
