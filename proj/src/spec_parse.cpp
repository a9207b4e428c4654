#include "ngt/spec_parse.hpp"

#include <cmath>

#include "json.hpp"
#include "ngt/errors.hpp"

namespace ngt {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("invalid document: ") + e.what());
    }
}

cplx complex_of(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError(std::string(what) + " must be [re, im]");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

LogComplex log_complex_of(const json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + " must be [log_mag, arg] or []");
    if (j.empty()) return LogComplex::zero();
    if (j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError(std::string(what) + " must be [log_mag, arg] or []");
    return LogComplex(j[0].get<double>(), j[1].get<double>());
}

LogSeries series_of(const json& j) {
    if (!j.is_object() || !j.contains("generator"))
        throw SchemaError("series needs a generator field");
    std::string gen = j.at("generator").get<std::string>();
    if (gen == "gaussian") {
        double s = j.at("sigma_sq").get<double>();
        long terms = j.at("terms").get<long>();
        if (s <= 0.0 || terms < 1) throw SchemaError("gaussian: bad parameters");
        return gaussian_series(s, std::size_t(terms));
    }
    if (gen == "polynomial" || gen == "explicit") {
        const json& c = j.at("coeffs");
        if (!c.is_array() || c.empty()) throw SchemaError(gen + ": coeffs must be nonempty");
        std::vector<cplx> coeffs;
        for (const auto& e : c) coeffs.push_back(complex_of(e, "coefficient"));
        return polynomial_series(coeffs);
    }
    if (gen == "lacunary") {
        double decay = j.at("decay").get<double>();
        long m = j.at("max_exponent").get<long>();
        if (decay <= 0.0 || m < 1 || m > 24) throw SchemaError("lacunary: bad parameters");
        return lacunary_series(decay, std::size_t(m));
    }
    throw SchemaError("unknown series generator: " + gen);
}

std::vector<LedgerEntry> entries_of(const json& j, const char* what) {
    std::vector<LedgerEntry> out;
    if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
    for (const auto& e : j) {
        LedgerEntry le;
        le.location = cplx(e.at("re").get<double>(), e.at("im").get<double>());
        le.mult = e.value("mult", 1L);
        out.push_back(le);
    }
    return out;
}

// Winding number of f along |w - center| = rho by adaptive argument tracking.
double arg_step(const PuncturedFunction& f, const cplx& center, double rho, double a,
                const LogComplex& va, double b, const LogComplex& vb, int depth) {
    if (va.is_zero() || vb.is_zero())
        throw LedgerError("ledger verification: function vanishes on a contour");
    double d = wrap_angle(vb.arg - va.arg);
    if (std::fabs(d) <= M_PI / 2.0) return d;
    if (depth <= 0)
        throw LedgerError("ledger verification: argument tracking failed to resolve");
    double m = 0.5 * (a + b);
    LogComplex vm = f.eval_omega(center + std::polar(rho, m));
    return arg_step(f, center, rho, a, va, m, vm, depth - 1) +
           arg_step(f, center, rho, m, vm, b, vb, depth - 1);
}

long local_winding(const PuncturedFunction& f, const cplx& center, double rho) {
    const int n = 64;
    std::vector<LogComplex> v(n);
    for (int k = 0; k < n; ++k)
        v[std::size_t(k)] = f.eval_omega(center + std::polar(rho, 2.0 * M_PI * k / n));
    double total = 0.0;
    for (int k = 0; k < n; ++k)
        total += arg_step(f, center, rho, 2.0 * M_PI * k / n, v[std::size_t(k)],
                          2.0 * M_PI * (k + 1) / n, v[std::size_t((k + 1) % n)], 40);
    double w = total / (2.0 * M_PI);
    if (std::fabs(w - std::round(w)) > 1e-3)
        throw LedgerError("ledger verification: non-integer winding " + format_double(w));
    return long(std::llround(w));
}

} // namespace

void verify_ledger(const PuncturedFunction& f, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!f.ledger()) return;
    const auto& led = *f.ledger();
    std::vector<std::pair<LedgerEntry, long>> all;  // entry, signed multiplicity
    for (const auto& z : led.zeros) all.push_back({z, z.mult});
    for (const auto& p : led.poles) all.push_back({p, -p.mult});

    double reach = f.reliable_radius();
    for (std::size_t i = 0; i < all.size(); ++i) {
        const cplx& loc = all[i].first.location;
        double rho = 0.5;
        for (std::size_t j = 0; j < all.size(); ++j)
            if (j != i) rho = std::min(rho, 0.45 * std::abs(all[j].first.location - loc));
        if (rho <= 0.0) throw LedgerError("ledger entries too close to verify");
        if (std::abs(loc) + rho > reach) continue;  // outside the trusted region
        long w = local_winding(f, loc, rho);
        if (w != all[i].second)
            throw LedgerError("ledger count mismatch at (" + format_double(loc.real()) + ", " +
                              format_double(loc.imag()) + "): winding " + std::to_string(w) +
                              " vs declared " + std::to_string(all[i].second));
    }

    if (led.zero_complete && led.pole_complete && reach >= 1.2) {
        bool clear = true;
        long expected = 0;
        for (const auto& [e, signed_mult] : all) {
            double d = std::abs(std::abs(e.location) - 1.0);
            if (d < 0.05) clear = false;
            if (std::abs(e.location) < 1.0) expected += signed_mult;
        }
        if (clear) {
            long w = local_winding(f, cplx(0.0, 0.0), 1.0);
            if (w != expected)
                throw LedgerError("complete ledger disagrees with the count on |w| = 1: " +
                                  std::to_string(w) + " vs " + std::to_string(expected));
        }
    }
}

PuncturedFunction parse_function_spec(const std::string& json_text) {
    json j = parse_json(json_text);
    try {
        if (!j.is_object()) throw SchemaError("function spec must be an object");
        cplx z0 = j.contains("z0") ? complex_of(j.at("z0"), "z0") : cplx(0.0, 0.0);

        std::shared_ptr<const LogSeries> series;
        if (j.contains("series"))
            series = std::make_shared<LogSeries>(series_of(j.at("series")));

        std::shared_ptr<const LogSeries> bound = series;
        if (j.contains("bound_series"))
            bound = std::make_shared<LogSeries>(series_of(j.at("bound_series")));

        ExprPtr expr;
        if (j.contains("closed_form"))
            expr = parse_expression(j.at("closed_form").get<std::string>(), bound);

        FunctionKind kind = FunctionKind::Analytic;
        if (j.contains("kind")) {
            std::string k = j.at("kind").get<std::string>();
            if (k == "meromorphic") kind = FunctionKind::Meromorphic;
            else if (k != "analytic") throw SchemaError("kind must be analytic|meromorphic");
        }

        std::optional<ZeroPoleLedger> ledger;
        if (j.contains("ledger")) {
            const json& l = j.at("ledger");
            ZeroPoleLedger led;
            if (l.contains("zeros")) led.zeros = entries_of(l.at("zeros"), "ledger.zeros");
            if (l.contains("poles")) led.poles = entries_of(l.at("poles"), "ledger.poles");
            led.zero_complete = l.value("zero_complete", false);
            led.pole_complete = l.value("pole_complete", false);
            ledger = std::move(led);
        }

        PuncturedFunction f(z0, expr, series, std::move(ledger), kind,
                            j.value("name", std::string()));
        verify_ledger(f);
        return f;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("function spec: ") + e.what());
    }
}

OdeSpec parse_ode_spec(const std::string& json_text) {
    json j = parse_json(json_text);
    try {
        OdeSpec ode;
        ode.k = j.at("k").get<long>();
        if (j.contains("s")) ode.s = j.at("s").get<long>();
        ode.terms = j.at("terms").get<std::size_t>();
        cplx z0 = j.contains("z0") ? complex_of(j.at("z0"), "z0") : cplx(0.0, 0.0);
        for (const auto& e : j.at("initial"))
            ode.initial.push_back(log_complex_of(e, "initial value"));
        for (const auto& c : j.at("coefficients")) {
            if (c.contains("coeffs")) {
                std::vector<LogComplex> coeffs;
                for (const auto& e : c.at("coeffs"))
                    coeffs.push_back(log_complex_of(e, "coefficient"));
                ode.coefficients.push_back(PuncturedFunction::from_series(
                    z0, LogSeries(std::move(coeffs)), std::nullopt,
                    c.value("name", std::string())));
            } else {
                ode.coefficients.push_back(parse_function_spec(c.dump()));
            }
        }
        ode.validate();
        return ode;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("ode spec: ") + e.what());
    }
}

Scenario parse_scenario_doc(const std::string& json_text) {
    json j = parse_json(json_text);
    try {
        if (!j.contains("builtin"))
            throw SchemaError("scenario document needs a builtin id");
        Scenario sc = builtin_scenario(j.at("builtin").get<std::string>());
        if (j.contains("tolerance")) sc.tolerance = j.at("tolerance").get<double>();
        if (j.contains("hypothesis_margin"))
            sc.hypothesis_margin = j.at("hypothesis_margin").get<double>();
        if (j.contains("quad_points")) sc.quad.base_points = j.at("quad_points").get<int>();
        auto grid = [&](const char* key, RadiusGrid& g) {
            if (!j.contains(key)) return;
            const json& e = j.at(key);
            g.u_min = e.value("u_min", g.u_min);
            g.u_max = e.value("u_max", g.u_max);
            g.points = e.value("points", g.points);
            g.validate();
        };
        grid("coeff_grid", sc.coeff_grid);
        grid("f_grid", sc.f_grid);
        grid("osc_grid", sc.osc_grid);
        if (sc.tolerance <= 0.0 || sc.hypothesis_margin <= 0.0)
            throw SchemaError("scenario tolerances must be positive");
        return sc;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("scenario doc: ") + e.what());
    }
}

} // namespace ngt
