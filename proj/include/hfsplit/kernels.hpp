#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Data-parallel inner loops shared by the flow operators and the Hermite
// transforms.  The default entry points are OpenMP-parallel for large
// vectors; hfsplit::kernels::serial holds the plain-loop reference
// implementations used by the unit tests and the kernel benchmark.
//
// Only elementwise kernels are parallelized.  Reductions (norms, inner
// products) stay serial so that results do not depend on the thread count.

namespace hfsplit::kernels {

using cplx = std::complex<double>;

// Minimum vector length before an OpenMP team is spun up.  Below this the
// fork/join overhead dominates on typical hardware.
inline constexpr std::size_t omp_threshold = 1 << 14;

namespace serial {

// u[i] *= exp(-i*phase[i])
void apply_phase(std::span<cplx> u, std::span<const double> phase);

// u[i] *= factors[i]
void apply_factors(std::span<cplx> u, std::span<const cplx> factors);

// factors[j] = exp(-i*theta*k[j]^2/2)
void build_drift_factors(std::span<cplx> factors, std::span<const double> k,
                         double theta);

// out[i] = dt_b*(pot[i] + sigma*|u[i]|^2) + alpha_x2*x[i]^2/2
// pot may be empty (treated as zero).
void build_kick_phase(std::span<double> out, std::span<const cplx> u,
                      std::span<const double> x, std::span<const double> pot,
                      double dt_b, double sigma, double alpha_x2);

// c[r] = scale * sum_j mat[r*n+j] * u[j]   (rows x n, row-major)
void matvec(std::span<cplx> c, std::span<const double> mat,
            std::span<const cplx> u, double scale);

// u[j] = sum_r mat[r*n+j] * c[r]   (transposed apply)
void matvec_transposed(std::span<cplx> u, std::span<const double> mat,
                       std::span<const cplx> c);

// sum_i |u[i]|^2  (serial by design, see header comment)
double sum_abs2(std::span<const cplx> u);

// sum_i |u[i] - v[i]|^2
double sum_abs2_diff(std::span<const cplx> u, std::span<const cplx> v);

} // namespace serial

void apply_phase(std::span<cplx> u, std::span<const double> phase);
void apply_factors(std::span<cplx> u, std::span<const cplx> factors);
void build_drift_factors(std::span<cplx> factors, std::span<const double> k,
                         double theta);
void build_kick_phase(std::span<double> out, std::span<const cplx> u,
                      std::span<const double> x, std::span<const double> pot,
                      double dt_b, double sigma, double alpha_x2);
void matvec(std::span<cplx> c, std::span<const double> mat,
            std::span<const cplx> u, double scale);
void matvec_transposed(std::span<cplx> u, std::span<const double> mat,
                       std::span<const cplx> c);

inline double sum_abs2(std::span<const cplx> u) { return serial::sum_abs2(u); }
inline double sum_abs2_diff(std::span<const cplx> u, std::span<const cplx> v) {
    return serial::sum_abs2_diff(u, v);
}

} // namespace hfsplit::kernels
