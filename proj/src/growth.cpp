#include "ngt/growth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "ngt/errors.hpp"

namespace ngt {

void RadiusGrid::validate() const {
    if (!(0.0 < u_min && u_min < u_max)) throw SchemaError("grid: need 0 < u_min < u_max");
    if (points < 16) throw SchemaError("grid: need at least 16 points");
}

std::vector<double> RadiusGrid::u_values() const {
    validate();
    std::vector<double> u(std::size_t(points), 0.0);
    for (int k = 0; k < points; ++k)
        u[std::size_t(k)] = u_min + (u_max - u_min) * double(k) / double(points - 1);
    return u;
}

std::vector<double> RadiusGrid::radii() const {
    std::vector<double> r;
    for (double u : u_values()) r.push_back(std::exp(-std::exp(u)));
    return r;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

std::string GrowthTable::to_csv() const {
    std::string out = "# schema_version 1\n";
    out += "u,r,m,N,T,logM,V,N_zeros,flags\n";
    for (const auto& row : rows) {
        out += format_double(row.u) + "," + format_double(row.r) + "," + format_double(row.m) +
               "," + format_double(row.N) + "," + format_double(row.T) + "," +
               format_double(row.log_M) + "," + std::to_string(row.V) + "," +
               format_double(row.N_zeros) + "," + row.flags + "\n";
    }
    return out;
}

namespace {

GrowthRow compute_row(const PuncturedFunction& f, double u, double r,
                      const QuadratureConfig& cfg, const SampleOptions& opt) {
    GrowthRow row;
    row.u = u;
    row.r = r;
    try {
        row.m = proximity(f, r, cfg);
        row.N = counting(f, r);
        row.T = row.m + row.N;
    } catch (const Error& e) {
        row.flags = std::string("T:") + e.what();
        return row;
    }
    if (opt.with_log_M && f.kind() == FunctionKind::Analytic) {
        bool in_range = !f.has_series() || 1.0 / r <= f.series().residual_radius();
        if (in_range) {
            try {
                row.log_M = max_modulus(f, r);
            } catch (const Error&) {
                // leave NaN; M-based estimators skip the row
            }
        }
    }
    if (opt.with_V && f.has_series()) {
        if (1.0 / r <= f.series().residual_radius())
            row.V = f.series().max_term(-std::log(r)).first;
    }
    return row;
}

GrowthTable sample_impl(const PuncturedFunction& f, const RadiusGrid& grid,
                        const QuadratureConfig& cfg, const SampleOptions& opt, bool parallel) {
    GrowthTable table;
    table.grid = grid;
    std::vector<double> u = grid.u_values();
    std::vector<double> r = grid.radii();
    table.rows.resize(u.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long k = 0; k < long(u.size()); ++k)
            table.rows[std::size_t(k)] =
                compute_row(f, u[std::size_t(k)], r[std::size_t(k)], cfg, opt);
    } else {
        for (long k = 0; k < long(u.size()); ++k)
            table.rows[std::size_t(k)] =
                compute_row(f, u[std::size_t(k)], r[std::size_t(k)], cfg, opt);
    }
    if (opt.with_N_zeros) {
        std::vector<double> nz =
            zero_counting_column(f, grid, opt.zero_outer_t, cfg, opt.distinct_zeros);
        for (std::size_t k = 0; k < table.rows.size(); ++k) table.rows[k].N_zeros = nz[k];
    }
    for (const auto& row : table.rows)
        if (!row.ok()) ++table.failed;
    if (4 * table.failed > long(table.rows.size()))
        throw TooManyFailures("more than 25% of grid rows failed");
    return table;
}

} // namespace

GrowthTable sample_growth(const PuncturedFunction& f, const RadiusGrid& grid,
                          const QuadratureConfig& cfg, const SampleOptions& opt) {
    return sample_impl(f, grid, cfg, opt, true);
}

GrowthTable sample_growth_serial(const PuncturedFunction& f, const RadiusGrid& grid,
                                 const QuadratureConfig& cfg, const SampleOptions& opt) {
    return sample_impl(f, grid, cfg, opt, false);
}

std::vector<double> zero_counting_column(const PuncturedFunction& f, const RadiusGrid& grid,
                                         double t_outer, const QuadratureConfig& cfg,
                                         bool distinct) {
    std::vector<double> radii = grid.radii();
    std::vector<double> out(radii.size(), 0.0);

    if (f.ledger() && f.ledger()->zero_complete) {
        for (std::size_t k = 0; k < radii.size(); ++k) {
            double r = radii[k], N = 0.0;
            for (const auto& z : f.ledger()->zeros) {
                double mult = distinct ? 1.0 : double(z.mult);
                double mag = std::abs(z.location);
                if (mag == 0.0) N += mult * std::log(1.0 / r);
                else if (mag <= 1.0 / r) N += mult * std::log(1.0 / (r * mag));
            }
            out[k] = N;
        }
        return out;
    }
    if (distinct)
        throw IncompleteLedger("distinct zero counts need a complete zero ledger");

    // Winding-number route on nested annuli: boundaries with log(1/t) in
    // geometric progression, 24 per decade.
    double ell_end = -std::log(radii.back());  // largest log(1/t)
    double ell0 = -std::log(t_outer);
    std::vector<double> ell;
    ell.push_back(ell0);
    double step = std::pow(10.0, 1.0 / 24.0);
    for (double e = std::max(ell0 * step, 0.1); e < ell_end; e *= step) {
        if (e > ell.back() + 1e-12) ell.push_back(e);
    }
    if (ell_end > ell.back() + 1e-12) ell.push_back(ell_end);

    std::vector<long> Z(ell.size(), 0);
    for (std::size_t j = 0; j < ell.size(); ++j) {
        double rho = std::exp(ell[j]);
        long w = winding_number(f, rho, cfg);
        if (f.kind() == FunctionKind::Meromorphic) {
            if (!f.ledger() || !f.ledger()->pole_complete)
                throw IncompleteLedger("winding zero counts need a complete pole ledger");
            for (const auto& p : f.ledger()->poles)
                if (std::abs(p.location) <= rho) w += p.mult;
        }
        Z[j] = w;
    }

    for (std::size_t k = 0; k < radii.size(); ++k) {
        double r = radii[k];
        double N = 0.0;
        if (Z[0] > 0) N += double(Z[0]) * std::log(t_outer / r);
        for (std::size_t j = 1; j < ell.size(); ++j) {
            long c = Z[j] - Z[j - 1];
            if (c <= 0) continue;
            double t_star = std::exp(-0.5 * (ell[j] + ell[j - 1]));
            if (t_star >= r) N += double(c) * std::log(t_star / r);
        }
        out[k] = N;
    }
    return out;
}

namespace {

double iterated_log_plus(double v, int p) {
    double y = v;
    for (int i = 0; i < p; ++i) y = std::log(std::max(y, 1.0));
    return y;
}

double x_of_u(double u, int q) {
    // log_q(1/r) with log(1/r) = e^u.
    double t = std::exp(u);
    for (int i = 1; i < q; ++i) t = std::log(t);
    return t;
}

struct Pt { double x, y; };

double cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Monotone chain; upper = true picks the upper convex envelope.
std::vector<Pt> envelope(const std::vector<Pt>& pts, bool upper) {
    std::vector<Pt> h;
    for (const auto& p : pts) {
        while (h.size() >= 2) {
            double c = cross(h[h.size() - 2], h[h.size() - 1], p);
            if ((upper && c >= 0) || (!upper && c <= 0)) h.pop_back();
            else break;
        }
        h.push_back(p);
    }
    return h;
}

double ls_slope(const std::vector<Pt>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = double(pts.size());
    for (const auto& p : pts) { sx += p.x; sy += p.y; sxx += p.x * p.x; sxy += p.x * p.y; }
    double den = n * sxx - sx * sx;
    if (den == 0.0) return 0.0;
    return (n * sxy - sx * sy) / den;
}

std::vector<Pt> tail(const std::vector<Pt>& pts, double window) {
    std::size_t n = std::max<std::size_t>(3, std::size_t(std::ceil(window * double(pts.size()))));
    n = std::min(n, pts.size());
    return std::vector<Pt>(pts.end() - long(n), pts.end());
}

} // namespace

OrderEstimate estimate_order(const GrowthTable& table, int p, int q, Flavor flavor,
                             Source source) {
    if (p < 1 || q < 1 || q > p + 1) throw SchemaError("estimate_order: need p, q >= 1 and q <= p + 1");
    std::vector<Pt> pts;
    for (const auto& row : table.rows) {
        if (!row.ok()) continue;
        double col = std::numeric_limits<double>::quiet_NaN();
        switch (source) {
            case Source::T: col = row.T; break;
            case Source::M: col = row.log_M; break;  // one log already applied
            case Source::V: col = row.V < 0 ? std::numeric_limits<double>::quiet_NaN()
                                            : double(row.V); break;
            case Source::N_zeros: col = row.N_zeros; break;
        }
        if (std::isnan(col)) continue;
        pts.push_back({x_of_u(row.u, q), iterated_log_plus(col, p)});
    }
    if (pts.size() < 12) throw InsufficientData("estimate_order: fewer than 12 usable rows");

    OrderEstimate est;
    est.flavor = flavor;
    est.source = source;

    // A column that never climbs above 1 has order zero by convention.
    double ymax = 0.0;
    for (const auto& pt : pts) ymax = std::max(ymax, pt.y);
    if (ymax <= 0.0) {
        est.negative_growth = true;
        est.value = est.ratio = est.lo = est.hi = 0.0;
        return est;
    }

    const double windows[3] = {0.3, 0.4, 0.5};
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double w : windows) {
        std::vector<Pt> t = tail(pts, w);
        double ratio;
        if (flavor == Flavor::Upper) {
            ratio = -std::numeric_limits<double>::infinity();
            for (const auto& pt : t) ratio = std::max(ratio, pt.y / pt.x);
        } else {
            ratio = std::numeric_limits<double>::infinity();
            for (const auto& pt : t) ratio = std::min(ratio, pt.y / pt.x);
        }
        double slope = ls_slope(envelope(t, flavor == Flavor::Upper));
        if (w == 0.4) { est.ratio = ratio; est.value = slope; }
        lo = std::min({lo, ratio, slope});
        hi = std::max({hi, ratio, slope});
    }
    est.lo = lo;
    est.hi = hi;
    est.window = 0.4;

    if (p == 1 && q == 2 && source == Source::N_zeros) {
        // Logarithmic exponent of convergence subtracts one.
        est.value -= 1.0;
        est.ratio -= 1.0;
        est.lo -= 1.0;
        est.hi -= 1.0;
    }
    return est;
}

TypeEstimate estimate_type(const GrowthTable& table, double order, Flavor flavor, Source source) {
    if (source != Source::T && source != Source::M)
        throw SchemaError("estimate_type: source must be T or M");
    TypeEstimate est;
    est.order_used = order;
    if (order < 0.8) throw OrderOutOfRange("type needs order >= 1 (got " + format_double(order) + ")");
    if (order < 1.0) {
        est.order_used = 1.0;
        est.clamped = true;
    }
    std::vector<Pt> pts;
    for (const auto& row : table.rows) {
        if (!row.ok()) continue;
        double col = source == Source::T ? row.T : row.log_M;
        if (std::isnan(col)) continue;
        // (log 1/r)^order = exp(order * u)
        pts.push_back({row.u, col * std::exp(-est.order_used * row.u)});
    }
    if (pts.size() < 12) throw InsufficientData("estimate_type: fewer than 12 usable rows");

    const double windows[3] = {0.3, 0.4, 0.5};
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double w : windows) {
        std::vector<Pt> t = tail(pts, w);
        double v;
        if (flavor == Flavor::Upper) {
            v = -std::numeric_limits<double>::infinity();
            for (const auto& pt : t) v = std::max(v, pt.y);
        } else {
            v = std::numeric_limits<double>::infinity();
            for (const auto& pt : t) v = std::min(v, pt.y);
        }
        if (w == 0.4) est.value = v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    est.lo = lo;
    est.hi = hi;
    return est;
}

DeltaEstimate estimate_delta(const GrowthTable& table) {
    std::vector<Pt> pts;
    for (const auto& row : table.rows) {
        if (!row.ok() || row.T <= 0.0) continue;
        pts.push_back({row.u, row.m / row.T});
    }
    if (pts.size() < 12) throw InsufficientData("estimate_delta: fewer than 12 usable rows");
    DeltaEstimate est;
    const double windows[3] = {0.3, 0.4, 0.5};
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double w : windows) {
        std::vector<Pt> t = tail(pts, w);
        double v = std::numeric_limits<double>::infinity();
        for (const auto& pt : t) v = std::min(v, pt.y);
        if (w == 0.4) est.value = v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    est.lo = lo;
    est.hi = hi;
    return est;
}

} // namespace ngt
