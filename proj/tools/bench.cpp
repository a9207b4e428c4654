// Compares the OpenMP kernels with the serial reference implementations:
// circle sampling on a single large circle and a full growth-table sweep.
#include <chrono>
#include <cstdio>

#include "ngt/catalog.hpp"
#include "ngt/growth.hpp"
#include "ngt/nevanlinna.hpp"

using namespace ngt;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& fn, int reps) {
    // one warmup run, then the best of reps
    fn();
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = clock_type::now();
        fn();
        auto t1 = clock_type::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const char* what, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n", what,
                serial_ms, parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main() {
    PuncturedFunction g = catalog_function("gaussian");
    PuncturedFunction p = catalog_function("pole_rich");

    QuadratureConfig quad;
    quad.base_points = 16384;
    double r = std::exp(-std::exp(2.2));
    report("sample_circle gaussian",
           time_ms([&] { sample_circle_serial(g, r, quad.base_points); }, 3),
           time_ms([&] { sample_circle(g, r, quad.base_points); }, 3));

    RadiusGrid grid{1.0, 2.6, 40};
    QuadratureConfig gq;
    gq.base_points = 2048;
    report("sample_growth gaussian",
           time_ms([&] { sample_growth_serial(g, grid, gq); }, 2),
           time_ms([&] { sample_growth(g, grid, gq); }, 2));

    RadiusGrid pgrid{1.0, 2.2, 32};
    report("sample_growth pole_rich",
           time_ms([&] { sample_growth_serial(p, pgrid, gq); }, 2),
           time_ms([&] { sample_growth(p, pgrid, gq); }, 2));
    return 0;
}
