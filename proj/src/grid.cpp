#include "hfsplit/grid.hpp"

#include "hfsplit/errors.hpp"
#include "hfsplit/kernels.hpp"

#include <cmath>
#include <numbers>

namespace hfsplit {

std::shared_ptr<const Grid> make_grid(double a, double b, std::size_t n) {
    if (!(b > a))
        throw ValidationError("make_grid: requires b > a");
    if (n < 4)
        throw ValidationError("make_grid: requires n >= 4");
    if (n % 2 != 0)
        throw ValidationError("make_grid: requires even n");

    auto g = std::make_shared<Grid>();
    g->a = a;
    g->b = b;
    g->n = n;
    g->h_x = (b - a) / static_cast<double>(n);
    g->k_unit = 2.0 * std::numbers::pi / (b - a);
    g->points.resize(n);
    g->wavenumbers.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        g->points[i] = a + static_cast<double>(i) * g->h_x;
    const std::size_t half = n / 2;
    for (std::size_t j = 0; j < n; ++j) {
        const double idx = (j < half)
                               ? static_cast<double>(j)
                               : static_cast<double>(j) - static_cast<double>(n);
        g->wavenumbers[j] = g->k_unit * idx;
    }
    return g;
}

WaveState make_state(std::shared_ptr<const Grid> grid) {
    WaveState u;
    u.amplitudes.assign(grid->n, {0.0, 0.0});
    u.grid = std::move(grid);
    return u;
}

WaveState displaced_gaussian_state(std::shared_ptr<const Grid> grid,
                                   double delta, bool normalize) {
    WaveState u = make_state(std::move(grid));
    const auto& x = u.grid->points;
    for (std::size_t i = 0; i < u.grid->n; ++i) {
        const double d = x[i] - delta;
        u.amplitudes[i] = std::exp(-0.5 * d * d);
    }
    if (normalize) {
        const double nrm = norm_l2(u);
        if (nrm == 0.0)
            throw NumericalError("displaced_gaussian_state: zero norm");
        for (auto& z : u.amplitudes)
            z /= nrm;
    }
    return u;
}

double norm_l2(const WaveState& u) {
    return std::sqrt(u.grid->h_x * kernels::sum_abs2(u.amplitudes));
}

double error_l2(const WaveState& u, const WaveState& v, bool weighted) {
    if (!same_grid(*u.grid, *v.grid))
        throw ValidationError("error_l2: grid mismatch");
    const double s = kernels::sum_abs2_diff(u.amplitudes, v.amplitudes);
    return weighted ? std::sqrt(u.grid->h_x * s) : std::sqrt(s);
}

double position_expectation(const WaveState& u) {
    const auto& x = u.grid->points;
    double s = 0.0;
    for (std::size_t i = 0; i < u.grid->n; ++i)
        s += x[i] * std::norm(u.amplitudes[i]);
    return u.grid->h_x * s;
}

} // namespace hfsplit
