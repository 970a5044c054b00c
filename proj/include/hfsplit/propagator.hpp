#pragma once

#include "hfsplit/hermite.hpp"
#include "hfsplit/magnus.hpp"
#include "hfsplit/problem.hpp"
#include "hfsplit/schemes.hpp"
#include "hfsplit/spectral_flows.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hfsplit {

enum class SplitKind {
    f_split,   // A = p^2/(2 mu); B carries trap + perturbation + nonlinearity
    ho_fourier, // A = harmonic part via KDK factorization; B = rest
    ho_hermite  // A = harmonic part in the Hermite basis; B = rest
};

std::string to_string(SplitKind k);
std::string to_string(MagnusOrder m);

struct MethodSpec {
    SplitKind split = SplitKind::ho_fourier;
    SplittingScheme scheme;
    MagnusOrder magnus = MagnusOrder::exact_constant; // HO splits only
    std::size_t hermite_m = 0;                        // ho_hermite only

    std::string id() const; // e.g. "srkn6_4_HF_m6", "strang_bab_HM32"
};

struct StepReport {
    WaveState state;
    CostCounter cost; // deltas for this step
    std::vector<std::string> warnings;
};

struct PropagationResult {
    WaveState state;
    CostCounter cost;
    std::vector<std::string> warnings;
};

// One composition step of size h.  Standalone: no kick merging across
// step boundaries.
StepReport step(const WaveState& u, const Problem& p, const MethodSpec& m,
                double h);

// Called after each step when dense output is requested.  Requesting
// output splits the merged boundary kick, costing one exponential per
// observed step.
using StepObserver =
    std::function<void(const WaveState& state, long long step_index,
                       const CostCounter& cost_so_far)>;

// n_steps equal steps to t_final, merging boundary kicks between steps
// when no observer is installed.
PropagationResult propagate(const WaveState& u0, const Problem& p,
                            const MethodSpec& m, double t_final,
                            long long n_steps,
                            const StepObserver& observer = nullptr);

// High-accuracy reference: srkn6_4 on the harmonic-oscillator split
// (plain Fourier split when there is no harmonic term) at
// multiplier x finest_steps, verified by halving the reference step and
// requiring agreement below richardson_tol.
WaveState reference_solution(const Problem& p, const WaveState& u0,
                             double t_final, long long finest_steps = 16,
                             int multiplier = 64,
                             double richardson_tol = 1e-12);

// --- empirical order harness ------------------------------------------

struct OrderFitPoint {
    double h;
    double error;
    bool used; // excluded points sit under the round-off floor
};

struct OrderFit {
    double slope = 0.0;
    std::vector<OrderFitPoint> points;
    std::size_t n_used = 0;
};

// Least-squares slope of log(error) vs log(h); points with error below
// floor are excluded as round-off-dominated.
OrderFit fit_order(const std::vector<double>& h,
                   const std::vector<double>& err, double floor = 1e-12);

// Propagates u0 to t_final at each step count and fits the global order
// against the supplied reference state.
OrderFit empirical_order(const SplittingScheme& scheme, SplitKind split,
                         MagnusOrder magnus, const Problem& p,
                         const WaveState& u0, double t_final,
                         const std::vector<long long>& step_counts,
                         const WaveState& reference,
                         double floor = 1e-12);

// Two-term effective-order fit for near-integrable schemes: errors
// measured at two perturbation strengths are separated into the
// eps h^r and eps^2 h^p components; slopes of each are fitted.
struct TwoEpsOrderFit {
    double slope_eps = 0.0;    // r estimate
    double slope_eps_sq = 0.0; // p estimate
    std::size_t n_used_eps = 0;
    std::size_t n_used_eps_sq = 0;
};

TwoEpsOrderFit two_eps_order(const std::vector<double>& h,
                             const std::vector<double>& err_eps1,
                             const std::vector<double>& err_eps2,
                             double eps1, double eps2,
                             double floor = 1e-13);

} // namespace hfsplit
