#ifndef NGT_FUNCTION_HPP
#define NGT_FUNCTION_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ngt/expr.hpp"
#include "ngt/log_complex.hpp"
#include "ngt/series.hpp"

namespace ngt {

struct LedgerEntry {
    cplx location;  // in omega coordinates
    long mult = 1;
};

// Declared zero/pole bookkeeping in the omega plane. "complete" asserts the
// list contains every zero (resp. pole); counting refuses incomplete pole
// ledgers rather than undercounting silently.
struct ZeroPoleLedger {
    std::vector<LedgerEntry> zeros;
    std::vector<LedgerEntry> poles;
    bool zero_complete = false;
    bool pole_complete = false;

    void validate() const;  // throws LedgerError on duplicates/bad mults
};

enum class FunctionKind { Analytic, Meromorphic };

// A function on the sphere punctured at z0, held as g(w) with w = 1/(z0 - z).
// Closed form and/or truncated series; when both are present they are checked
// against each other at construction.
class PuncturedFunction {
public:
    PuncturedFunction(cplx z0, ExprPtr closed_form,
                      std::shared_ptr<const LogSeries> series,
                      std::optional<ZeroPoleLedger> ledger, FunctionKind kind,
                      std::string name = "");

    static PuncturedFunction from_expr(cplx z0, ExprPtr e,
                                       FunctionKind kind = FunctionKind::Analytic,
                                       std::optional<ZeroPoleLedger> ledger = std::nullopt,
                                       std::string name = "");
    static PuncturedFunction from_series(cplx z0, LogSeries s,
                                         std::optional<ZeroPoleLedger> ledger = std::nullopt,
                                         std::string name = "");

    cplx z0() const { return z0_; }
    FunctionKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    bool has_series() const { return series_ != nullptr; }
    bool has_closed_form() const { return closed_form_ != nullptr; }
    const LogSeries& series() const;
    const ExprPtr& closed_form() const { return closed_form_; }
    const std::optional<ZeroPoleLedger>& ledger() const { return ledger_; }

    // Largest |w| at which evaluation is trusted (series truncation bound, or
    // +inf for closed forms).
    double reliable_radius() const;

    LogComplex eval_omega(const cplx& w) const;
    LogComplex eval_z(const cplx& z) const;

    // j-th derivative; wrt z is realized as (w^2 d/dw)^j.
    PuncturedFunction differentiate(long j, bool wrt_z) const;

    // g with g(w) = f(z0 - 1/w): under the fixed coordinate convention this is
    // the same data read in the plane, so inversion preserves everything.
    PuncturedFunction invert_to_plane() const;

    PuncturedFunction with_ledger(ZeroPoleLedger led) const;
    PuncturedFunction with_name(std::string n) const;

private:
    void cross_check() const;

    cplx z0_;
    ExprPtr closed_form_;
    std::shared_ptr<const LogSeries> series_;
    std::optional<ZeroPoleLedger> ledger_;
    FunctionKind kind_ = FunctionKind::Analytic;
    std::string name_;
};

cplx omega_of_z(const cplx& z0, const cplx& z);
cplx z_of_omega(const cplx& z0, const cplx& w);

} // namespace ngt

#endif
