#include "hfsplit/spectral_flows.hpp"

#include "hfsplit/errors.hpp"
#include "hfsplit/kernels.hpp"

#include <cmath>

namespace hfsplit {

void apply_drift(WaveState& u, double theta, FftPlan& plan, DriftCache* cache,
                 CostCounter& counter) {
    if (!std::isfinite(theta))
        throw ValidationError("apply_drift: non-finite theta");
    const Grid& g = *u.grid;

    DriftCache local;
    DriftCache& c = cache ? *cache : local;
    if (!c.valid || c.theta != theta || c.phase_factors.size() != g.n) {
        if (cache && c.valid && c.strict)
            throw ValidationError("apply_drift: cache/theta mismatch in strict mode");
        c.phase_factors.resize(g.n);
        kernels::build_drift_factors(c.phase_factors, g.wavenumbers, theta);
        c.theta = theta;
        c.valid = true;
    }

    plan.filtered(u.amplitudes, c.phase_factors);
    counter.n_fft_pairs += 1;
    counter.n_exponentials += 1;
}

void apply_drift(WaveState& u, double theta, DriftCache* cache,
                 CostCounter& counter) {
    FftPlan plan(u.grid->n);
    apply_drift(u, theta, plan, cache, counter);
}

void apply_kick(WaveState& u, const std::vector<double>& phase,
                CostCounter& counter) {
    if (phase.size() != u.amplitudes.size())
        throw ValidationError("apply_kick: phase length mismatch");
    kernels::apply_phase(u.amplitudes, phase);
    counter.n_exponentials += 1;
}

std::vector<double> build_kick_phase(const Problem& p, const WaveState& u,
                                     double t_frozen, double dt_b,
                                     double alpha_x2) {
    const Grid& g = *u.grid;
    std::vector<double> phase(g.n);
    std::vector<double> pot;
    if (p.perturbation && dt_b != 0.0) {
        pot.resize(g.n);
        for (std::size_t i = 0; i < g.n; ++i) {
            pot[i] = p.perturbation(g.points[i], t_frozen);
            if (!std::isfinite(pot[i]))
                throw NumericalError("build_kick_phase: non-finite potential");
        }
    }
    const double sg = dt_b != 0.0 ? p.sigma_at(t_frozen) : 0.0;
    kernels::build_kick_phase(phase, u.amplitudes, g.points, pot, dt_b, sg,
                              alpha_x2);
    return phase;
}

} // namespace hfsplit
