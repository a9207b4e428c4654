#include "ngt/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ngt/errors.hpp"

namespace ngt {

void QuadratureConfig::validate() const {
    if (base_points < 64 || (base_points & (base_points - 1)) != 0)
        throw SchemaError("base_points must be a power of two >= 64");
    if (rel_tol <= 0.0) throw SchemaError("rel_tol must be positive");
    if (kink_refine_depth < 0) throw SchemaError("kink_refine_depth must be >= 0");
}

// f on the circle |z - z0| = r at parameter phi: omega = (1/r) e^{-i phi}.
static LogComplex circle_value(const PuncturedFunction& f, double r, double phi) {
    double log_R = -std::log(r);
    if (f.has_closed_form())
        return expr_eval(*f.closed_form(), std::polar(std::exp(log_R), -phi));
    return f.series().eval_polar(log_R, -phi);
}

CircleSample sample_circle_serial(const PuncturedFunction& f, double r, int n) {
    CircleSample s;
    s.r = r;
    s.values.resize(std::size_t(n));
    for (int k = 0; k < n; ++k)
        s.values[std::size_t(k)] = circle_value(f, r, 2.0 * M_PI * double(k) / double(n));
    return s;
}

CircleSample sample_circle(const PuncturedFunction& f, double r, int n) {
    CircleSample s;
    s.r = r;
    s.values.resize(std::size_t(n));
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k)
        s.values[std::size_t(k)] = circle_value(f, r, 2.0 * M_PI * double(k) / double(n));
    return s;
}

namespace {

// Adaptive trapezoid of max(log_mag, 0)/(2 pi) over one period. Intervals
// where log_mag changes sign (kinks of log+) are bisected to full depth.
struct LogPlusIntegrator {
    std::function<LogComplex(double)> eval;
    double tol_per_radian = 0.0;
    int max_depth = 20;
    double unresolved = 0.0;

    static double pos(const LogComplex& v) { return std::max(v.log_mag, 0.0); }

    double run(std::vector<double> angles, const QuadratureConfig& cfg) {
        std::sort(angles.begin(), angles.end());
        angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
        std::vector<LogComplex> vals(angles.size());
#pragma omp parallel for schedule(static)
        for (long i = 0; i < long(angles.size()); ++i) vals[std::size_t(i)] = eval(angles[std::size_t(i)]);
        for (const auto& v : vals)
            if (std::isinf(v.log_mag) && v.log_mag > 0)
                throw PoleOnCircle("infinite modulus on the integration circle");

        // Coarse pass to scale the tolerance.
        double coarse = 0.0;
        for (std::size_t i = 0; i + 1 < angles.size(); ++i)
            coarse += 0.5 * (pos(vals[i]) + pos(vals[i + 1])) * (angles[i + 1] - angles[i]);
        coarse += 0.5 * (pos(vals.back()) + pos(vals.front())) *
                  (2.0 * M_PI - angles.back() + angles.front());
        coarse /= 2.0 * M_PI;
        tol_per_radian = cfg.rel_tol * (1.0 + coarse) / (2.0 * M_PI);
        max_depth = cfg.kink_refine_depth;

        double total = 0.0;
        for (std::size_t i = 0; i + 1 < angles.size(); ++i)
            total += segment(angles[i], vals[i], angles[i + 1], vals[i + 1], max_depth);
        total += segment(angles.back(), vals.back(), angles.front() + 2.0 * M_PI,
                         vals.front(), max_depth);
        total /= 2.0 * M_PI;
        if (unresolved / (2.0 * M_PI) > 10.0 * cfg.rel_tol * (1.0 + total))
            throw QuadratureNoConvergence("log+ quadrature failed to converge");
        return total;
    }

    double segment(double a, const LogComplex& va, double b, const LogComplex& vb, int depth) {
        double whole = 0.5 * (pos(va) + pos(vb)) * (b - a);
        if (b - a <= 0.0) return 0.0;
        double m = 0.5 * (a + b);
        LogComplex vm = eval(m);
        if (std::isinf(vm.log_mag) && vm.log_mag > 0)
            throw PoleOnCircle("infinite modulus on the integration circle");
        double split = 0.5 * (pos(va) + pos(vm)) * (m - a) + 0.5 * (pos(vm) + pos(vb)) * (b - m);
        bool kink = (va.log_mag > 0.0) != (vm.log_mag > 0.0) ||
                    (vm.log_mag > 0.0) != (vb.log_mag > 0.0);
        if (depth <= 0) {
            unresolved += std::fabs(split - whole);
            return split;
        }
        if (!kink && std::fabs(split - whole) <= tol_per_radian * (b - a)) return split;
        return segment(a, va, m, vm, depth - 1) + segment(m, vm, b, vb, depth - 1);
    }
};

std::vector<double> base_angles(int n) {
    std::vector<double> a(std::size_t(n), 0.0);
    for (int k = 0; k < n; ++k) a[std::size_t(k)] = 2.0 * M_PI * double(k) / double(n);
    return a;
}

double wrap_02pi(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a < 0) a += 2.0 * M_PI;
    return a;
}

// Extra nodes clustered around ledger zeros/poles lying near the circle.
void add_ledger_angles(std::vector<double>& angles, const PuncturedFunction& f, double r,
                       int base_points) {
    if (!f.ledger()) return;
    double h = 2.0 * M_PI / double(base_points);
    auto add_near = [&](const LedgerEntry& e) {
        double mag = std::abs(e.location);
        if (mag == 0.0) return;
        double t = 1.0 / mag;
        if (std::fabs(t - r) >= r / 8.0) return;
        double phi = wrap_02pi(-std::arg(e.location));
        angles.push_back(phi);
        for (int j = 1; j <= 10; ++j) {
            double d = h / double(1 << j);
            angles.push_back(wrap_02pi(phi + d));
            angles.push_back(wrap_02pi(phi - d));
        }
    };
    for (const auto& e : f.ledger()->zeros) add_near(e);
    for (const auto& e : f.ledger()->poles) add_near(e);
}

} // namespace

double proximity(const PuncturedFunction& f, double r, const QuadratureConfig& cfg) {
    cfg.validate();
    if (r <= 0.0) throw SchemaError("proximity needs r > 0");
    if (f.ledger())
        for (const auto& p : f.ledger()->poles) {
            double mag = std::abs(p.location);
            if (mag == 0.0) continue;
            if (std::fabs(1.0 / mag - r) <= 1e-12 * r)
                throw PoleOnCircle("ledger pole on the circle; perturb r");
        }
    std::vector<double> angles = base_angles(cfg.base_points);
    add_ledger_angles(angles, f, r, cfg.base_points);
    LogPlusIntegrator integ;
    integ.eval = [&](double phi) { return circle_value(f, r, phi); };
    return integ.run(std::move(angles), cfg);
}

double counting(const PuncturedFunction& f, double r, bool distinct) {
    if (r <= 0.0) throw SchemaError("counting needs r > 0");
    if (f.kind() == FunctionKind::Analytic) return 0.0;
    if (!f.ledger() || !f.ledger()->pole_complete)
        throw IncompleteLedger("counting requires a complete pole ledger");
    double N = 0.0;
    for (const auto& p : f.ledger()->poles) {
        double mult = distinct ? 1.0 : double(p.mult);
        double mag = std::abs(p.location);
        if (mag == 0.0) {
            N += mult * std::log(1.0 / r);  // pole at z = infinity
            continue;
        }
        if (mag <= 1.0 / r) N += mult * std::log(1.0 / (r * mag));
    }
    return N;
}

double characteristic(const PuncturedFunction& f, double r, const QuadratureConfig& cfg) {
    return proximity(f, r, cfg) + counting(f, r);
}

double plane_proximity(const PuncturedFunction& g, double R, const QuadratureConfig& cfg) {
    cfg.validate();
    if (R <= 0.0) throw SchemaError("plane proximity needs R > 0");
    double log_R = std::log(R);
    LogPlusIntegrator integ;
    integ.eval = [&](double theta) {
        if (g.has_closed_form())
            return expr_eval(*g.closed_form(), std::polar(R, theta));
        return g.series().eval_polar(log_R, theta);
    };
    return integ.run(base_angles(cfg.base_points), cfg);
}

double plane_counting(const PuncturedFunction& g, double R, bool distinct) {
    if (g.kind() == FunctionKind::Analytic) return 0.0;
    if (!g.ledger() || !g.ledger()->pole_complete)
        throw IncompleteLedger("plane counting requires a complete pole ledger");
    double N = 0.0;
    for (const auto& p : g.ledger()->poles) {
        double mult = distinct ? 1.0 : double(p.mult);
        double mag = std::abs(p.location);
        if (mag == 0.0) N += mult * std::log(R);
        else if (mag <= R) N += mult * std::log(R / mag);
    }
    return N;
}

double plane_characteristic(const PuncturedFunction& g, double R, const QuadratureConfig& cfg) {
    return plane_proximity(g, R, cfg) + plane_counting(g, R);
}

namespace {

std::pair<double, double> max_modulus_impl(const PuncturedFunction& f, double r) {
    if (f.kind() != FunctionKind::Analytic)
        throw MeromorphicMaxModulus("max modulus defined for analytic kind only");
    const int n = 4096;
    std::vector<double> v(std::size_t(n), 0.0);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k)
        v[std::size_t(k)] = circle_value(f, r, 2.0 * M_PI * double(k) / double(n)).log_mag;

    // Local maxima of the scan, best 8 candidates, golden-section polish.
    std::vector<int> cand;
    for (int k = 0; k < n; ++k) {
        double prev = v[std::size_t((k + n - 1) % n)], next = v[std::size_t((k + 1) % n)];
        if (v[std::size_t(k)] >= prev && v[std::size_t(k)] >= next) cand.push_back(k);
    }
    std::sort(cand.begin(), cand.end(),
              [&](int a, int b) { return v[std::size_t(a)] > v[std::size_t(b)]; });
    if (cand.size() > 8) cand.resize(8);

    const double h = 2.0 * M_PI / double(n);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double best = kNegInf, best_phi = 0.0;
    for (int k : cand) {
        double a = h * double(k) - h, b = h * double(k) + h;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = circle_value(f, r, x1).log_mag, f2 = circle_value(f, r, x2).log_mag;
        for (int it = 0; it < 80; ++it) {
            if (f1 < f2) {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + gr * (b - a);
                f2 = circle_value(f, r, x2).log_mag;
            } else {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - gr * (b - a);
                f1 = circle_value(f, r, x1).log_mag;
            }
        }
        double phi = 0.5 * (a + b);
        double val = circle_value(f, r, phi).log_mag;
        if (val > best) { best = val; best_phi = phi; }
    }
    return {best, wrap_02pi(best_phi)};
}

} // namespace

double max_modulus(const PuncturedFunction& f, double r) {
    return max_modulus_impl(f, r).first;
}

double max_modulus_angle(const PuncturedFunction& f, double r) {
    return max_modulus_impl(f, r).second;
}

namespace {

// One contour sample: value, plus the local bound rho |g'| / |g| on
// d(arg g)/d(theta). A small wrapped argument step alone is not safe: a
// rapidly spinning factor can alias full turns away between samples, so a
// segment is only accepted once the rate bound certifies it cannot.
struct WindingSample {
    LogComplex value;
    double rate = 0.0;
};

struct WindingEval {
    const PuncturedFunction& g;
    const PuncturedFunction& gd;  // dg/dw
    double rho;
    double log_rho;

    WindingSample operator()(double th) const {
        auto ev = [&](const PuncturedFunction& fn) {
            return fn.has_closed_form() ? expr_eval(*fn.closed_form(), std::polar(rho, th))
                                        : fn.series().eval_polar(log_rho, th);
        };
        WindingSample s;
        s.value = ev(g);
        if (s.value.is_zero()) throw ZeroOnContour("function vanishes on the winding contour");
        LogComplex d = ev(gd);
        s.rate = d.is_zero() ? 0.0 : std::exp(log_rho + d.log_mag - s.value.log_mag);
        return s;
    }
};

double arg_increment(const WindingEval& ev, double th_a, const WindingSample& va, double th_b,
                     const WindingSample& vb, int depth) {
    double d = wrap_angle(vb.value.arg - va.value.arg);
    double step = th_b - th_a;
    // Safe: the rate bound caps the true step at pi, and the wrapped value is
    // within pi/2, so the 2 pi k candidates are excluded.
    if (std::fabs(d) <= M_PI / 2.0 && step * std::max(va.rate, vb.rate) <= M_PI)
        return d;
    if (depth <= 0)
        throw NonIntegerWinding("argument step failed to resolve; perturb the radius");
    double th_m = 0.5 * (th_a + th_b);
    WindingSample vm = ev(th_m);
    return arg_increment(ev, th_a, va, th_m, vm, depth - 1) +
           arg_increment(ev, th_m, vm, th_b, vb, depth - 1);
}

} // namespace

long winding_number(const PuncturedFunction& g, double rho, const QuadratureConfig& cfg) {
    cfg.validate();
    PuncturedFunction gd = g.differentiate(1, false);
    WindingEval ev{g, gd, rho, std::log(rho)};
    const int n = cfg.base_points;
    std::vector<WindingSample> v{std::vector<WindingSample>(std::size_t(n))};
    std::exception_ptr err;
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) {
        try {
            v[std::size_t(k)] = ev(2.0 * M_PI * double(k) / double(n));
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        double th_a = 2.0 * M_PI * double(k) / double(n);
        double th_b = 2.0 * M_PI * double(k + 1) / double(n);
        total += arg_increment(ev, th_a, v[std::size_t(k)], th_b, v[std::size_t((k + 1) % n)],
                               48);
    }
    double w = total / (2.0 * M_PI);
    double nearest = std::round(w);
    if (std::fabs(w - nearest) > 1e-3)
        throw NonIntegerWinding("winding " + std::to_string(w) + " not near an integer");
    return long(nearest);
}

long count_zeros_annulus(const PuncturedFunction& f, double t_inner, double t_outer,
                         const QuadratureConfig& cfg) {
    if (!(0.0 < t_inner && t_inner < t_outer))
        throw SchemaError("annulus needs 0 < t_inner < t_outer");
    // z-annulus [t_inner, t_outer] is the omega-annulus [1/t_outer, 1/t_inner].
    long w_in = winding_number(f, 1.0 / t_inner, cfg);
    long w_out = winding_number(f, 1.0 / t_outer, cfg);
    long zeros = w_in - w_out;
    if (f.kind() == FunctionKind::Meromorphic) {
        if (!f.ledger() || !f.ledger()->pole_complete)
            throw IncompleteLedger("zero counting for meromorphic f needs a complete pole ledger");
        for (const auto& p : f.ledger()->poles) {
            double mag = std::abs(p.location);
            if (mag > 1.0 / t_outer && mag <= 1.0 / t_inner) zeros += p.mult;
        }
    }
    if (zeros < 0)
        throw NonIntegerWinding("negative zero count; contour too close to a zero or pole");
    return zeros;
}

std::pair<long, double> central_index(const PuncturedFunction& g, double R) {
    const LogSeries& s = g.series();
    if (R > s.residual_radius())
        throw SeriesOutOfRange("central index requested past the reliable radius");
    return s.max_term(std::log(R));
}

} // namespace ngt
