#pragma once

#include "hfsplit/grid.hpp"
#include "hfsplit/spectral_flows.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace hfsplit {

// Hermite-function rows sampled on an equidistant grid.
// k_matrix is row-major m x n with row r holding the r-th eigenfunction
// of H = p^2/(2 mu) + mu omega^2 x^2/2; energies[r] = omega*(r + 1/2).
// Rows are built with the normalized three-term recursion, which stays
// O(1) in magnitude for any practical m.
struct HermiteBasis {
    std::size_t m = 0;
    std::shared_ptr<const Grid> grid;
    std::vector<double> k_matrix;
    std::vector<double> energies;
    double scale = 1.0;             // sqrt(mu*omega)
    bool boundary_resolved = true;  // last row < 1e-14 at the domain edge
};

HermiteBasis hermite_functions(std::size_t m,
                               std::shared_ptr<const Grid> grid,
                               double omega = 1.0, double mu = 1.0);

// c = h_x K u;  u' = K^T (e^{-i dt E} c).  Exact on states inside the
// span; weight outside the span is projected away (that loss is the
// quantity the basis-size studies measure).  Counts one exponential.
WaveState propagate_hermite(const WaveState& u, const HermiteBasis& basis,
                            double dt, CostCounter* counter = nullptr);

struct BasisSizeResult {
    std::size_t m = 0;       // smallest size meeting the tolerance
    double residual = 0.0;   // projection residual achieved
    bool at_ceiling = false; // stopped at the grid-resolution ceiling
    std::size_t ceiling = 0;
};

// Smallest M with ||u0 - K^T(h_x K u0)|| <= tolerance (weighted norm),
// searched incrementally.  When the grid cannot resolve enough rows the
// result reports the ceiling and the residual reached there.
BasisSizeResult required_basis_size(const WaveState& u0, double tolerance);

} // namespace hfsplit
