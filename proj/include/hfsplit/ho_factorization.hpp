#pragma once

#include "hfsplit/schemes_fwd.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace hfsplit {

// Kick-drift-kick coefficients (f, g, e) for the factorization
//
//   U = e^{-i f x^2/2} e^{-i g p^2/2} e^{-i e x^2/2}
//
// of a quadratic-Hamiltonian propagator.  Applied to a state, the e-kick
// acts first and the f-kick last.  t_star is the distance to the first
// singularity of the factorization; inputs beyond it throw HorizonError.
struct KdkCoefficients {
    double f = 0.0;
    double g = 0.0;
    double e = 0.0;
    double t_star = 0.0;
    bool near_singular = false; // |g| under the 1e-8*max(1,|t|) guard
};

// Unimodular 2x2 map on classical (q,p).
struct Classical2x2 {
    double m11, m12, m21, m22;
    double det() const { return m11 * m22 - m12 * m21; }
};

// Constant-frequency oscillator H = p^2/(2 mu) + mu omega^2 x^2/2 over
// time t:  f = e = mu*omega*tan(omega t/2), g = sin(omega t)/(mu*omega),
// valid for |t| < t* = pi/omega.
KdkCoefficients kdk_constant(double t, double mu, double omega,
                             bool strict = false);

// Drift-kick-drift variant of the same propagator.  The returned f and e
// are the *drift* coefficients tan(omega t/2)/(mu*omega) and g is the
// *kick* coefficient mu*omega*sin(omega t); roles are swapped relative to
// KdkCoefficients' naming.  Kept for the cost comparison of layouts.
KdkCoefficients kdk_constant_aba(double t, double mu, double omega,
                                 bool strict = false);

// Single-exponential quadratic form
//   exp(-i (t/2)(alpha x^2 + beta (xp+px) + gamma p^2)).
// With eta^2 = alpha*gamma - beta^2, trigonometric expressions are
// evaluated through even/odd series in eta^2 so the hyperbolic branch
// (eta^2 < 0) and the eta -> 0 limit need no special-casing.
KdkCoefficients kdk_quadratic(double t, double alpha, double beta,
                              double gamma, bool strict = false);

// Product of two half-step oscillator propagators
//   exp(-i (t/2) H_L) exp(-i (t/2) H_R),  H_k = (p^2 + omega_k^2 x^2)/2.
// t* is the smallest positive root of g, found by bracketed bisection.
KdkCoefficients kdk_two_exponential(double t, double omega_l, double omega_r,
                                    bool strict = false);

// Classical realization of the KDK product: shear(f) * drift(g) * shear(e)
// acting on column (q,p), e applied first — the same ordering as the
// quantum product.  Determinant is 1 in exact arithmetic.
Classical2x2 classical_map(const KdkCoefficients& c);

// Smallest positive root of g for the two-exponential factorization
// (exposed for tests).
double two_exponential_t_star(double omega_l, double omega_r);

// Merged harmonic kicks for a full BAB composition whose stage drifts are
// replaced by per-stage KDK factorizations.  With stages executing in
// increasing index order, the kick between drift k and drift k+1 carries
// f(stage k) + e(stage k+1); the chain ends are e(stage 1) and
// f(stage m).  alpha has size m+1, drift_g size m.
struct KickChain {
    std::vector<double> alpha;
    std::vector<double> drift_g;
};

using KdkProvider = std::function<KdkCoefficients(std::size_t stage_index,
                                                  double stage_dt)>;

KickChain merge_kick_chain(const SplittingScheme& scheme, double h,
                           const KdkProvider& provider);

} // namespace hfsplit
