#include "ngt/function.hpp"

#include <cmath>
#include <random>

#include "ngt/errors.hpp"

namespace ngt {

cplx omega_of_z(const cplx& z0, const cplx& z) { return 1.0 / (z0 - z); }
cplx z_of_omega(const cplx& z0, const cplx& w) { return z0 - 1.0 / w; }

void ZeroPoleLedger::validate() const {
    auto check = [](const std::vector<LedgerEntry>& v, const char* what) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i].mult < 1) throw LedgerError(std::string(what) + ": multiplicity < 1");
            for (std::size_t j = i + 1; j < v.size(); ++j)
                if (v[i].location == v[j].location)
                    throw LedgerError(std::string(what) + ": duplicate location");
        }
    };
    check(zeros, "ledger zeros");
    check(poles, "ledger poles");
    for (const auto& a : zeros)
        for (const auto& b : poles)
            if (a.location == b.location)
                throw LedgerError("ledger: location listed as both zero and pole");
}

PuncturedFunction::PuncturedFunction(cplx z0, ExprPtr closed_form,
                                     std::shared_ptr<const LogSeries> series,
                                     std::optional<ZeroPoleLedger> ledger,
                                     FunctionKind kind, std::string name)
    : z0_(z0),
      closed_form_(std::move(closed_form)),
      series_(std::move(series)),
      ledger_(std::move(ledger)),
      kind_(kind),
      name_(std::move(name)) {
    if (!closed_form_ && !series_)
        throw ConsistencyError("function needs a closed form or a series");
    if (ledger_) {
        ledger_->validate();
        if (kind_ == FunctionKind::Analytic && !ledger_->poles.empty())
            throw LedgerError("analytic function declared with poles");
    }
    if (closed_form_ && series_) cross_check();
}

PuncturedFunction PuncturedFunction::from_expr(cplx z0, ExprPtr e, FunctionKind kind,
                                               std::optional<ZeroPoleLedger> ledger,
                                               std::string name) {
    return PuncturedFunction(z0, std::move(e), nullptr, std::move(ledger), kind,
                             std::move(name));
}

PuncturedFunction PuncturedFunction::from_series(cplx z0, LogSeries s,
                                                 std::optional<ZeroPoleLedger> ledger,
                                                 std::string name) {
    return PuncturedFunction(z0, nullptr, std::make_shared<LogSeries>(std::move(s)),
                             std::move(ledger), FunctionKind::Analytic, std::move(name));
}

const LogSeries& PuncturedFunction::series() const {
    if (!series_) throw ConsistencyError("function has no series representation");
    return *series_;
}

double PuncturedFunction::reliable_radius() const {
    if (closed_form_) return std::numeric_limits<double>::infinity();
    return series_->residual_radius();
}

void PuncturedFunction::cross_check() const {
    // 32 pseudo-random angles on a fixed test circle. If the truncation is not
    // reliable out to |w| = 2, fall back to half its reliable radius.
    double R = 2.0;
    if (series_ && series_->residual_radius() < R) R = 0.5 * series_->residual_radius();
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    for (int i = 0; i < 32; ++i) {
        double phi = ang(rng);
        cplx w = std::polar(R, phi);
        LogComplex a = expr_eval(*closed_form_, w);
        LogComplex b = series_->eval(w);
        if (lc_logmag_rel_diff(a, b) > 1e-8)
            throw ConsistencyError("closed form and series disagree at |w| = " +
                                   std::to_string(R));
    }
}

LogComplex PuncturedFunction::eval_omega(const cplx& w) const {
    if (closed_form_) return expr_eval(*closed_form_, w);
    return series_->eval(w);
}

LogComplex PuncturedFunction::eval_z(const cplx& z) const {
    if (z == z0_) throw EvaluationAtSingularity("evaluation at z0");
    return eval_omega(omega_of_z(z0_, z));
}

PuncturedFunction PuncturedFunction::differentiate(long j, bool wrt_z) const {
    if (j < 0) throw UnsupportedNode("negative derivative order");
    if (j == 0) return *this;

    ExprPtr e = closed_form_;
    std::shared_ptr<const LogSeries> s = series_;
    for (long step = 0; step < j; ++step) {
        if (e) {
            ExprPtr d = expr_diff_w(e);
            e = wrt_z ? Expr::mul(Expr::ipow(Expr::omega(), 2), d) : d;
        }
        if (s) {
            s = std::make_shared<LogSeries>(wrt_z ? s->derivative_z() : s->derivative_w());
        }
    }
    // Zeros move under differentiation, but a pole of order m stays put and
    // deepens to order m + j; a complete pole ledger survives with bumped
    // multiplicities while the zero list is dropped.
    std::optional<ZeroPoleLedger> led;
    if (ledger_ && !ledger_->poles.empty()) {
        ZeroPoleLedger l;
        l.poles = ledger_->poles;
        for (auto& p : l.poles) p.mult += j;
        l.pole_complete = ledger_->pole_complete;
        led = std::move(l);
    }
    return PuncturedFunction(z0_, std::move(e), std::move(s), std::move(led), kind_,
                             name_.empty() ? "" : name_ + "'");
}

PuncturedFunction PuncturedFunction::invert_to_plane() const {
    // g(w) = f(z0 - 1/w) is exactly the stored data: everything already lives
    // in omega coordinates, so inversion is the identity on the representation.
    return *this;
}

PuncturedFunction PuncturedFunction::with_ledger(ZeroPoleLedger led) const {
    PuncturedFunction f = *this;
    led.validate();
    if (kind_ == FunctionKind::Analytic && !led.poles.empty())
        throw LedgerError("analytic function declared with poles");
    f.ledger_ = std::move(led);
    return f;
}

PuncturedFunction PuncturedFunction::with_name(std::string n) const {
    PuncturedFunction f = *this;
    f.name_ = std::move(n);
    return f;
}

} // namespace ngt
