#include "hfsplit/magnus.hpp"

#include "hfsplit/errors.hpp"

#include <cmath>
#include <limits>

namespace hfsplit {

namespace {

void require_finite(double v, const char* who) {
    if (!std::isfinite(v))
        throw NumericalError(std::string(who) + ": non-finite frequency sample");
}

KdkCoefficients scale_mass(KdkCoefficients c, double mu) {
    c.f *= mu;
    c.e *= mu;
    c.g /= mu;
    return c;
}

} // namespace

TwoExpAverages magnus4_averages(const std::function<double(double)>& omega_sq,
                                double t, double dt) {
    if (dt == 0.0)
        throw ValidationError("magnus4_averages: dt must be nonzero");
    const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
    const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
    const double alpha = 0.5 - 1.0 / std::sqrt(3.0);
    const double beta = 1.0 - alpha;

    const double w1 = omega_sq(t + c1 * dt);
    const double w2 = omega_sq(t + c2 * dt);
    require_finite(w1, "magnus4_averages");
    require_finite(w2, "magnus4_averages");

    return TwoExpAverages{alpha * w1 + beta * w2, beta * w1 + alpha * w2};
}

QuadraticGenerator
magnus6_generator(const std::function<double(double)>& omega_sq, double t,
                  double dt) {
    if (dt == 0.0)
        throw ValidationError("magnus6_generator: dt must be nonzero");
    const double node = std::sqrt(15.0) / 10.0;
    const double w1 = omega_sq(t + (0.5 - node) * dt);
    const double w2 = omega_sq(t + 0.5 * dt);
    const double w3 = omega_sq(t + (0.5 + node) * dt);
    require_finite(w1, "magnus6_generator");
    require_finite(w2, "magnus6_generator");
    require_finite(w3, "magnus6_generator");

    const double dt2 = dt * dt;
    const double s585 = 5.0 * w1 + 8.0 * w2 + 5.0 * w3;

    QuadraticGenerator q;
    q.alpha = s585 / 18.0 +
              (dt2 / 486.0) * ((17.0 / 4.0) * (w1 * w1 + w3 * w3) +
                               8.0 * w2 * w2 + w1 * w2 + w2 * w3 -
                               (37.0 / 2.0) * w1 * w3);
    q.beta = dt * std::sqrt(5.0 / 3.0) * (w3 - w1) *
             (1.0 / 12.0 + (dt2 / 3240.0) * s585);
    q.gamma = 1.0 + (dt2 / 54.0) * (w1 - 2.0 * w2 + w3);
    q.stage_dt = dt;
    return q;
}

KdkCoefficients stage_kdk(const Problem& p, double t, double a_dt,
                          MagnusOrder order, bool strict) {
    if (a_dt == 0.0) {
        KdkCoefficients c;
        c.t_star = std::numeric_limits<double>::infinity();
        return c;
    }

    switch (order) {
    case MagnusOrder::exact_constant: {
        if (!p.omega_sq.is_constant())
            throw ValidationError(
                "stage_kdk: exact_constant requires a constant frequency");
        const double w_sq = p.omega_sq(t);
        if (w_sq > 0.0)
            return kdk_constant(a_dt, p.mu, std::sqrt(w_sq), strict);
        if (w_sq == 0.0) {
            KdkCoefficients c;
            c.g = a_dt / p.mu;
            c.t_star = std::numeric_limits<double>::infinity();
            return c;
        }
        // Inverted oscillator: route through the hyperbolic branch.
        return scale_mass(kdk_quadratic(a_dt, w_sq, 0.0, 1.0, strict), p.mu);
    }
    case MagnusOrder::magnus4: {
        const auto fn = [&p](double s) { return p.omega_sq(s); };
        const TwoExpAverages avg = magnus4_averages(fn, t, a_dt);
        if (!(avg.omega_l_sq > 0.0) || !(avg.omega_r_sq > 0.0))
            throw NumericalError("stage_kdk: magnus4 averages not positive; "
                                 "use magnus6 for this problem");
        return scale_mass(kdk_two_exponential(a_dt, std::sqrt(avg.omega_l_sq),
                                              std::sqrt(avg.omega_r_sq),
                                              strict),
                          p.mu);
    }
    case MagnusOrder::magnus6: {
        const auto fn = [&p](double s) { return p.omega_sq(s); };
        const QuadraticGenerator q = magnus6_generator(fn, t, a_dt);
        return scale_mass(kdk_quadratic(a_dt, q.alpha, q.beta, q.gamma, strict),
                          p.mu);
    }
    }
    throw ValidationError("stage_kdk: unknown magnus order");
}

} // namespace hfsplit
