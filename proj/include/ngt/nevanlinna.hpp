#ifndef NGT_NEVANLINNA_HPP
#define NGT_NEVANLINNA_HPP

#include <vector>

#include "ngt/function.hpp"

namespace ngt {

struct QuadratureConfig {
    int base_points = 1024;       // power of two, >= 64
    int kink_refine_depth = 20;   // bisection depth around log+ kinks
    double rel_tol = 1e-6;

    void validate() const;
};

// Values of f on the circle z = z0 - r e^{i phi}, phi uniform on [0, 2pi).
// Equivalently omega = (1/r) e^{-i phi}.
struct CircleSample {
    double r = 0.0;
    std::vector<LogComplex> values;
};

// Parallel kernel and its serial twin; both fill values in index order and
// must agree bit for bit.
CircleSample sample_circle(const PuncturedFunction& f, double r, int n);
CircleSample sample_circle_serial(const PuncturedFunction& f, double r, int n);

// m_{z0}(r,f): circle average of log+|f|, adaptive trapezoid with kink
// bisection and extra nodes near ledger zeros/poles close to the circle.
double proximity(const PuncturedFunction& f, double r, const QuadratureConfig& cfg = {});

// N_{z0}(r,f): ledger sum over poles with |omega_p| <= 1/r plus the pole at
// z = infinity (omega = 0) weighted by log(1/r). distinct collapses
// multiplicities to 1.
double counting(const PuncturedFunction& f, double r, bool distinct = false);

// T_{z0}(r,f) = m + N.
double characteristic(const PuncturedFunction& f, double r, const QuadratureConfig& cfg = {});

// Classical plane characteristic of g at radius R: same functionals read on
// the circle |omega| = R. Kept as an independent code path so the inversion
// identity can be tested rather than assumed.
double plane_proximity(const PuncturedFunction& g, double R, const QuadratureConfig& cfg = {});
double plane_counting(const PuncturedFunction& g, double R, bool distinct = false);
double plane_characteristic(const PuncturedFunction& g, double R, const QuadratureConfig& cfg = {});

// log M_{z0}(r,f): 4096-angle scan plus golden-section polish near the best
// candidates. Analytic kind only.
double max_modulus(const PuncturedFunction& f, double r);

// Angle attaining the circle maximum (same search as max_modulus).
double max_modulus_angle(const PuncturedFunction& f, double r);

// Zeros of f (multiplicity counted) with t_inner <= |z - z0| <= t_outer,
// by winding numbers on the two omega circles, ledger poles added back.
long count_zeros_annulus(const PuncturedFunction& f, double t_inner, double t_outer,
                         const QuadratureConfig& cfg = {});

// Winding number of g along |omega| = rho (counterclockwise), adaptive
// argument tracking with per-step |d arg| <= pi/2.
long winding_number(const PuncturedFunction& g, double rho, const QuadratureConfig& cfg = {});

// Central index and log of the maximum term at |omega| = R = 1/r.
std::pair<long, double> central_index(const PuncturedFunction& g, double R);

} // namespace ngt

#endif
