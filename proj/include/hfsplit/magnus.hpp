#pragma once

#include "hfsplit/ho_factorization.hpp"
#include "hfsplit/problem.hpp"

#include <functional>

namespace hfsplit {

// How the flow of the (possibly time-dependent) harmonic part is
// represented over one composition stage.
enum class MagnusOrder {
    exact_constant, // closed form, constant frequency only
    magnus4,        // two averaged half-step exponentials, O(dt^5) local
    magnus6         // single quadratic generator, O(dt^7) local
};

// Averaged squared frequencies of the fourth-order commutator-free form
//   U ~ exp(-i (dt/2) H_L) exp(-i (dt/2) H_R),  H_k = (p^2 + w_k^2 x^2)/2
// sampled at the two-point Gauss-Legendre nodes of [t, t+dt].
struct TwoExpAverages {
    double omega_l_sq;
    double omega_r_sq;
};

TwoExpAverages magnus4_averages(const std::function<double(double)>& omega_sq,
                                double t, double dt);

// Coefficients of the sixth-order single-exponential form
//   U ~ exp(-i (dt/2)(alpha x^2 + beta (xp+px) + gamma p^2))
// built from three-point Gauss quadrature samples of omega^2.
struct QuadraticGenerator {
    double alpha;
    double beta;
    double gamma;
    double stage_dt;
};

QuadraticGenerator
magnus6_generator(const std::function<double(double)>& omega_sq, double t,
                  double dt);

// KDK coefficients for the harmonic flow of problem p over
// [t, t + a_dt].  Mass mu != 1 is folded in by canonical scaling:
// kicks scale by mu, the drift by 1/mu.
KdkCoefficients stage_kdk(const Problem& p, double t, double a_dt,
                          MagnusOrder order, bool strict = false);

} // namespace hfsplit
