#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace hfsplit {

// Equidistant periodic mesh on [a,b).  The right endpoint is excluded so
// the FFT length equals n; wavenumbers follow the standard DFT ordering
// with the Nyquist mode at -(n/2)*k_unit.
struct Grid {
    double a;
    double b;
    std::size_t n;
    double h_x;    // (b-a)/n
    double k_unit; // 2*pi/(b-a)
    std::vector<double> points;      // x_i = a + i*h_x
    std::vector<double> wavenumbers; // k_j, DFT ordering
};

// Preconditions: b > a, n even, n >= 4.
std::shared_ptr<const Grid> make_grid(double a, double b, std::size_t n);

inline bool same_grid(const Grid& g1, const Grid& g2) {
    return g1.n == g2.n && g1.a == g2.a && g1.b == g2.b;
}

// Discretized wavefunction: amplitudes[i] ~ psi(x_i, time).
struct WaveState {
    std::shared_ptr<const Grid> grid;
    std::vector<std::complex<double>> amplitudes;
    double time = 0.0;
};

WaveState make_state(std::shared_ptr<const Grid> grid);

// rho * exp(-(x-delta)^2/2); rho normalizes to unit weighted L2 norm on
// the grid when normalize is true.
WaveState displaced_gaussian_state(std::shared_ptr<const Grid> grid,
                                   double delta, bool normalize = true);

// sqrt(h_x * sum |u_i|^2)
double norm_l2(const WaveState& u);

// Discrete L2 distance.  weighted=true (default) multiplies by sqrt(h_x),
// giving a mesh-independent norm; weighted=false is the plain vector
// 2-norm over mesh values.
double error_l2(const WaveState& u, const WaveState& v, bool weighted = true);

// h_x * sum x_i |u_i|^2
double position_expectation(const WaveState& u);

} // namespace hfsplit
