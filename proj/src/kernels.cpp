#include "hfsplit/kernels.hpp"

#include <cmath>

namespace hfsplit::kernels {

namespace serial {

void apply_phase(std::span<cplx> u, std::span<const double> phase) {
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i)
        u[i] *= cplx{std::cos(phase[i]), -std::sin(phase[i])};
}

void apply_factors(std::span<cplx> u, std::span<const cplx> factors) {
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i)
        u[i] *= factors[i];
}

void build_drift_factors(std::span<cplx> factors, std::span<const double> k,
                         double theta) {
    const std::size_t n = factors.size();
    for (std::size_t j = 0; j < n; ++j) {
        const double ph = 0.5 * theta * k[j] * k[j];
        factors[j] = cplx{std::cos(ph), -std::sin(ph)};
    }
}

void build_kick_phase(std::span<double> out, std::span<const cplx> u,
                      std::span<const double> x, std::span<const double> pot,
                      double dt_b, double sigma, double alpha_x2) {
    const std::size_t n = out.size();
    if (pot.empty()) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = dt_b * sigma * std::norm(u[i]) +
                     0.5 * alpha_x2 * x[i] * x[i];
    } else {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = dt_b * (pot[i] + sigma * std::norm(u[i])) +
                     0.5 * alpha_x2 * x[i] * x[i];
    }
}

void matvec(std::span<cplx> c, std::span<const double> mat,
            std::span<const cplx> u, double scale) {
    const std::size_t rows = c.size();
    const std::size_t n = u.size();
    for (std::size_t r = 0; r < rows; ++r) {
        const double* row = mat.data() + r * n;
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j)
            acc += row[j] * u[j];
        c[r] = scale * acc;
    }
}

void matvec_transposed(std::span<cplx> u, std::span<const double> mat,
                       std::span<const cplx> c) {
    const std::size_t rows = c.size();
    const std::size_t n = u.size();
    for (std::size_t j = 0; j < n; ++j)
        u[j] = cplx{0.0, 0.0};
    for (std::size_t r = 0; r < rows; ++r) {
        const double* row = mat.data() + r * n;
        const cplx cr = c[r];
        for (std::size_t j = 0; j < n; ++j)
            u[j] += row[j] * cr;
    }
}

double sum_abs2(std::span<const cplx> u) {
    double s = 0.0;
    for (const cplx& z : u)
        s += std::norm(z);
    return s;
}

double sum_abs2_diff(std::span<const cplx> u, std::span<const cplx> v) {
    double s = 0.0;
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i)
        s += std::norm(u[i] - v[i]);
    return s;
}

} // namespace serial

void apply_phase(std::span<cplx> u, std::span<const double> phase) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static) if (u.size() >= omp_threshold)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        u[i] *= cplx{std::cos(phase[i]), -std::sin(phase[i])};
}

void apply_factors(std::span<cplx> u, std::span<const cplx> factors) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static) if (u.size() >= omp_threshold)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        u[i] *= factors[i];
}

void build_drift_factors(std::span<cplx> factors, std::span<const double> k,
                         double theta) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(factors.size());
#pragma omp parallel for schedule(static) if (factors.size() >= omp_threshold)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        const double ph = 0.5 * theta * k[j] * k[j];
        factors[j] = cplx{std::cos(ph), -std::sin(ph)};
    }
}

void build_kick_phase(std::span<double> out, std::span<const cplx> u,
                      std::span<const double> x, std::span<const double> pot,
                      double dt_b, double sigma, double alpha_x2) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
    if (pot.empty()) {
#pragma omp parallel for schedule(static) if (out.size() >= omp_threshold)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            out[i] = dt_b * sigma * std::norm(u[i]) +
                     0.5 * alpha_x2 * x[i] * x[i];
    } else {
#pragma omp parallel for schedule(static) if (out.size() >= omp_threshold)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            out[i] = dt_b * (pot[i] + sigma * std::norm(u[i])) +
                     0.5 * alpha_x2 * x[i] * x[i];
    }
}

void matvec(std::span<cplx> c, std::span<const double> mat,
            std::span<const cplx> u, double scale) {
    const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(c.size());
    const std::size_t n = u.size();
#pragma omp parallel for schedule(static) if (rows * n >= omp_threshold)
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
        const double* row = mat.data() + static_cast<std::size_t>(r) * n;
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j)
            acc += row[j] * u[j];
        c[r] = scale * acc;
    }
}

void matvec_transposed(std::span<cplx> u, std::span<const double> mat,
                       std::span<const cplx> c) {
    const std::size_t rows = c.size();
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
    // Parallel over output elements: column walk keeps writes private.
#pragma omp parallel for schedule(static) if (rows * u.size() >= omp_threshold)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        cplx acc{0.0, 0.0};
        for (std::size_t r = 0; r < rows; ++r)
            acc += mat[r * static_cast<std::size_t>(n) +
                       static_cast<std::size_t>(j)] *
                   c[r];
        u[j] = acc;
    }
}

} // namespace hfsplit::kernels
