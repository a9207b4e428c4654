#ifndef NGT_GROWTH_HPP
#define NGT_GROWTH_HPP

#include <string>
#include <vector>

#include "ngt/function.hpp"
#include "ngt/nevanlinna.hpp"

namespace ngt {

// Radii r_k = exp(-exp(u_k)) with u uniform: the x axis u = log log(1/r) is
// the denominator of the logarithmic-order definitions.
struct RadiusGrid {
    double u_min = 1.0;
    double u_max = 3.0;
    int points = 48;

    void validate() const;
    std::vector<double> u_values() const;
    std::vector<double> radii() const;
};

struct GrowthRow {
    double u = 0.0;
    double r = 0.0;
    double m = 0.0;
    double N = 0.0;
    double T = 0.0;
    double log_M = std::numeric_limits<double>::quiet_NaN();   // analytic only
    long V = -1;                                               // series only
    double N_zeros = std::numeric_limits<double>::quiet_NaN(); // on request
    std::string flags;  // empty = good row

    bool ok() const { return flags.empty(); }
};

struct GrowthTable {
    RadiusGrid grid;
    std::vector<GrowthRow> rows;
    long failed = 0;

    std::string to_csv() const;  // fixed column order, locale-independent
};

struct SampleOptions {
    bool with_log_M = true;
    bool with_V = true;
    bool with_N_zeros = false;
    bool distinct_zeros = false;  // ledger-only; winding refuses
    double zero_outer_t = 2.0;    // outer cap of the zero-count annuli (z plane)
};

GrowthTable sample_growth(const PuncturedFunction& f, const RadiusGrid& grid,
                          const QuadratureConfig& cfg = {}, const SampleOptions& opt = {});
GrowthTable sample_growth_serial(const PuncturedFunction& f, const RadiusGrid& grid,
                                 const QuadratureConfig& cfg = {}, const SampleOptions& opt = {});

// N_{z0}(r, 1/f) column: from the ledger when zero_complete, otherwise by
// winding numbers on nested annuli (24 boundaries per decade of log(1/r)).
std::vector<double> zero_counting_column(const PuncturedFunction& f, const RadiusGrid& grid,
                                         double t_outer, const QuadratureConfig& cfg = {},
                                         bool distinct = false);

enum class Flavor { Upper, Lower };
enum class Source { T, M, V, N_zeros };

struct OrderEstimate {
    double value = 0.0;          // slope-of-envelope estimate
    double ratio = 0.0;          // tail ratio estimate
    Flavor flavor = Flavor::Upper;
    Source source = Source::T;
    double lo = 0.0, hi = 0.0;   // band across methods and windows
    double window = 0.4;
    bool negative_growth = false;
};

// [p,q]-order estimator over a sampled table. For source M the stored column
// is already log M, so p iterated logs realize log_{p+1} M. The logarithmic
// exponent of convergence's "-1" applies for (p,q) = (1,2) with N_zeros.
OrderEstimate estimate_order(const GrowthTable& table, int p, int q, Flavor flavor,
                             Source source);

struct TypeEstimate {
    double value = 0.0;
    double lo = 0.0, hi = 0.0;
    double order_used = 1.0;
    bool clamped = false;  // measured order slightly below 1, clamped up
};

TypeEstimate estimate_type(const GrowthTable& table, double order, Flavor flavor, Source source);

struct DeltaEstimate {
    double value = 0.0;
    double lo = 0.0, hi = 0.0;
};

// liminf of m/T over the tail.
DeltaEstimate estimate_delta(const GrowthTable& table);

// Shared helpers for formatting numbers deterministically (shortest
// round-trip via to_chars).
std::string format_double(double v);

} // namespace ngt

#endif
