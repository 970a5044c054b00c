#pragma once

#include "hfsplit/fft.hpp"
#include "hfsplit/grid.hpp"
#include "hfsplit/problem.hpp"

#include <complex>
#include <vector>

namespace hfsplit {

// Work counters for the cost axis of the benchmark sweeps.  One "FFT
// pair" is a forward+inverse transform; one "exponential" is a diagonal
// unitary applied to the state (a kick, or the drift diagonal).  A merged
// kick counts once.
struct CostCounter {
    long long n_fft_pairs = 0;
    long long n_exponentials = 0;
};

// Cached diagonal e^{-i theta k^2/2} for a fixed drift coefficient.  The
// factors are rebuilt whenever theta changes; in strict mode a mismatch
// throws instead.
struct DriftCache {
    double theta = 0.0;
    std::vector<std::complex<double>> phase_factors;
    bool strict = false;
    bool valid = false;
};

// u <- IFFT( e^{-i theta k^2/2} FFT(u) ).  theta carries everything the
// caller folded in (stage time, 1/mu, or the factorization's g).  Time
// bookkeeping lives in the propagator. cache may be null.
void apply_drift(WaveState& u, double theta, FftPlan& plan, DriftCache* cache,
                 CostCounter& counter);

// Convenience overload creating a throwaway plan (tests, one-shot use).
void apply_drift(WaveState& u, double theta, DriftCache* cache,
                 CostCounter& counter);

// u_i <- e^{-i phase_i} u_i.  Exact on |u| by construction.
void apply_kick(WaveState& u, const std::vector<double>& phase,
                CostCounter& counter);

// phase_i = dt_b*(pert(x_i, t_frozen) + sigma(t_frozen)|u_i|^2)
//           + alpha_x2 * x_i^2/2.
// |u|^2 is read from the current amplitudes, so a kick built from this
// phase solves its sub-flow exactly.
std::vector<double> build_kick_phase(const Problem& p, const WaveState& u,
                                     double t_frozen, double dt_b,
                                     double alpha_x2);

} // namespace hfsplit
