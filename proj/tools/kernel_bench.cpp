// Benchmarks the OpenMP kernels against their serial reference
// implementations across vector sizes.  Times are the median of
// repeated runs; the speedup column is serial/parallel.

#include "hfsplit/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

namespace {

using hfsplit::kernels::cplx;

double median_us(const std::function<void()>& fn, int reps) {
    std::vector<double> times;
    times.reserve(reps);
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(
            std::chrono::duration<double, std::micro>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled at build time\n");
#endif
    std::printf("%-22s %10s %12s %12s %9s\n", "kernel", "n", "serial_us",
                "parallel_us", "speedup");

    for (std::size_t n : {std::size_t{1} << 10, std::size_t{1} << 12,
                          std::size_t{1} << 14, std::size_t{1} << 16,
                          std::size_t{1} << 18, std::size_t{1} << 20}) {
        std::vector<cplx> u(n), v(n);
        std::vector<double> phase(n), x(n);
        std::vector<cplx> factors(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(n);
            u[i] = v[i] = cplx{std::cos(7 * t), std::sin(3 * t)};
            phase[i] = 0.1 * t;
            x[i] = -10.0 + 20.0 * t;
            factors[i] = cplx{std::cos(t), -std::sin(t)};
        }
        const int reps = n <= (1u << 14) ? 201 : 31;

        {
            const double ts = median_us(
                [&] { hfsplit::kernels::serial::apply_phase(v, phase); },
                reps);
            const double tp = median_us(
                [&] { hfsplit::kernels::apply_phase(u, phase); }, reps);
            std::printf("%-22s %10zu %12.2f %12.2f %8.2fx\n", "apply_phase", n,
                        ts, tp, ts / tp);
        }
        {
            const double ts = median_us(
                [&] { hfsplit::kernels::serial::apply_factors(v, factors); },
                reps);
            const double tp = median_us(
                [&] { hfsplit::kernels::apply_factors(u, factors); }, reps);
            std::printf("%-22s %10zu %12.2f %12.2f %8.2fx\n", "apply_factors",
                        n, ts, tp, ts / tp);
        }
        {
            std::vector<double> out(n);
            const double ts = median_us(
                [&] {
                    hfsplit::kernels::serial::build_kick_phase(
                        out, u, x, {}, 0.01, 1.0, 0.3);
                },
                reps);
            const double tp = median_us(
                [&] {
                    hfsplit::kernels::build_kick_phase(out, u, x, {}, 0.01,
                                                       1.0, 0.3);
                },
                reps);
            std::printf("%-22s %10zu %12.2f %12.2f %8.2fx\n",
                        "build_kick_phase", n, ts, tp, ts / tp);
        }
        {
            const std::size_t rows = 64;
            std::vector<double> mat(rows * n, 0.5);
            std::vector<cplx> c(rows);
            const int mv_reps = n <= (1u << 14) ? 51 : 11;
            const double ts = median_us(
                [&] { hfsplit::kernels::serial::matvec(c, mat, u, 1.0); },
                mv_reps);
            const double tp = median_us(
                [&] { hfsplit::kernels::matvec(c, mat, u, 1.0); }, mv_reps);
            std::printf("%-22s %10zu %12.2f %12.2f %8.2fx\n", "matvec[64xN]",
                        n, ts, tp, ts / tp);
        }
    }
    return 0;
}
