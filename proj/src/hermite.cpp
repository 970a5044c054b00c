#include "hfsplit/hermite.hpp"

#include "hfsplit/errors.hpp"
#include "hfsplit/kernels.hpp"

#include <cmath>
#include <numbers>

namespace hfsplit {

namespace {

// Fills row r+1 from rows r and r-1 of the normalized recursion
//   h_{r+1}(xi) = xi sqrt(2/(r+1)) h_r(xi) - sqrt(r/(r+1)) h_{r-1}(xi)
// with xi = scale*x.  row_prev may be null for r = 0.
void next_row(std::size_t r, double scale, const std::vector<double>& x,
              const double* row_prev, const double* row_cur, double* row_next) {
    const double c1 = std::sqrt(2.0 / static_cast<double>(r + 1));
    const double c2 = r == 0 ? 0.0
                             : std::sqrt(static_cast<double>(r) /
                                         static_cast<double>(r + 1));
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double xi = scale * x[j];
        row_next[j] = xi * c1 * row_cur[j] -
                      (row_prev ? c2 * row_prev[j] : 0.0);
    }
}

void ground_row(double scale, const std::vector<double>& x, double* row) {
    const double norm = std::pow(std::numbers::pi, -0.25) * std::sqrt(scale);
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double xi = scale * x[j];
        row[j] = norm * std::exp(-0.5 * xi * xi);
    }
}

// Resolution ceiling for the basis size: the classical turning point of
// the last row must fit inside the domain and its fastest oscillation
// under the grid Nyquist limit.
std::size_t basis_ceiling(const Grid& g, double scale) {
    const double extent =
        std::min(std::abs(g.a), std::abs(g.points.back()));
    const double m_domain = 0.5 * (scale * extent * scale * extent + 1.0);
    const double k_nyq = std::numbers::pi / g.h_x;
    const double m_nyquist = 0.5 * (k_nyq / scale * (k_nyq / scale) + 1.0);
    const double m_cap = std::min({m_domain, m_nyquist,
                                   static_cast<double>(g.n)});
    return m_cap < 1.0 ? 1 : static_cast<std::size_t>(m_cap);
}

} // namespace

HermiteBasis hermite_functions(std::size_t m,
                               std::shared_ptr<const Grid> grid,
                               double omega, double mu) {
    if (m < 1)
        throw ValidationError("hermite_functions: requires m >= 1");
    if (!(omega > 0.0) || !(mu > 0.0))
        throw ValidationError("hermite_functions: requires omega, mu > 0");

    HermiteBasis basis;
    basis.m = m;
    basis.grid = std::move(grid);
    basis.scale = std::sqrt(mu * omega);
    const Grid& g = *basis.grid;
    basis.k_matrix.resize(m * g.n);
    basis.energies.resize(m);
    for (std::size_t r = 0; r < m; ++r)
        basis.energies[r] = omega * (static_cast<double>(r) + 0.5);

    ground_row(basis.scale, g.points, basis.k_matrix.data());
    if (m >= 2)
        next_row(0, basis.scale, g.points, nullptr, basis.k_matrix.data(),
                 basis.k_matrix.data() + g.n);
    for (std::size_t r = 1; r + 1 < m; ++r)
        next_row(r, basis.scale, g.points,
                 basis.k_matrix.data() + (r - 1) * g.n,
                 basis.k_matrix.data() + r * g.n,
                 basis.k_matrix.data() + (r + 1) * g.n);

    const double* last = basis.k_matrix.data() + (m - 1) * g.n;
    basis.boundary_resolved = std::abs(last[0]) < 1e-14 &&
                              std::abs(last[g.n - 1]) < 1e-14;
    return basis;
}

WaveState propagate_hermite(const WaveState& u, const HermiteBasis& basis,
                            double dt, CostCounter* counter) {
    if (!same_grid(*u.grid, *basis.grid))
        throw ValidationError("propagate_hermite: grid mismatch");
    const Grid& g = *u.grid;

    std::vector<std::complex<double>> c(basis.m);
    kernels::matvec(c, basis.k_matrix, u.amplitudes, g.h_x);
    for (std::size_t r = 0; r < basis.m; ++r) {
        const double ph = dt * basis.energies[r];
        c[r] *= std::complex<double>{std::cos(ph), -std::sin(ph)};
    }
    WaveState out = u;
    kernels::matvec_transposed(out.amplitudes, basis.k_matrix, c);
    if (counter)
        counter->n_exponentials += 1;
    return out;
}

BasisSizeResult required_basis_size(const WaveState& u0, double tolerance) {
    if (!(tolerance > 0.0))
        throw ValidationError("required_basis_size: tolerance must be positive");
    const Grid& g = *u0.grid;
    const double scale = 1.0;
    const std::size_t ceiling = basis_ceiling(g, scale);

    std::vector<double> row_prev(g.n), row_cur(g.n), row_next(g.n);
    std::vector<std::complex<double>> recon(g.n, {0.0, 0.0});

    BasisSizeResult res;
    res.ceiling = ceiling;
    ground_row(scale, g.points, row_cur.data());
    for (std::size_t r = 0; r < ceiling; ++r) {
        std::complex<double> c{0.0, 0.0};
        for (std::size_t j = 0; j < g.n; ++j)
            c += row_cur[j] * u0.amplitudes[j];
        c *= g.h_x;
        for (std::size_t j = 0; j < g.n; ++j)
            recon[j] += row_cur[j] * c;

        const double residual = std::sqrt(
            g.h_x * kernels::sum_abs2_diff(u0.amplitudes, recon));
        res.m = r + 1;
        res.residual = residual;
        if (residual <= tolerance)
            return res;

        if (r + 1 < ceiling) {
            next_row(r, scale, g.points,
                     r == 0 ? nullptr : row_prev.data(), row_cur.data(),
                     row_next.data());
            row_prev.swap(row_cur);
            row_cur.swap(row_next);
        }
    }
    res.at_ceiling = true;
    return res;
}

} // namespace hfsplit
