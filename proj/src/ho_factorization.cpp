#include "hfsplit/ho_factorization.hpp"

#include "hfsplit/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hfsplit {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// cos(eta t) as an entire function of z = eta^2 (hyperbolic for z < 0).
double cos_eta(double z, double t) {
    const double w = z * t * t;
    if (std::abs(w) < 1e-4) {
        // 1 - w/2 + w^2/24 - w^3/720, truncation below 1e-20 relative
        return 1.0 + w * (-0.5 + w * (1.0 / 24.0 - w / 720.0));
    }
    return z > 0.0 ? std::cos(std::sqrt(z) * t)
                   : std::cosh(std::sqrt(-z) * t);
}

// sin(eta t)/eta as an entire function of z = eta^2.
double sinc_eta(double z, double t) {
    const double w = z * t * t;
    if (std::abs(w) < 1e-4) {
        return t * (1.0 + w * (-1.0 / 6.0 + w * (1.0 / 120.0 - w / 5040.0)));
    }
    if (z > 0.0) {
        const double eta = std::sqrt(z);
        return std::sin(eta * t) / eta;
    }
    const double nu = std::sqrt(-z);
    return std::sinh(nu * t) / nu;
}

void check_singularity(KdkCoefficients& c, double t, bool strict) {
    if (t != 0.0 && std::abs(c.g) < 1e-8 * std::max(1.0, std::abs(t))) {
        c.near_singular = true;
        if (strict)
            throw NumericalError("kdk factorization: g is numerically singular");
    }
}

} // namespace

KdkCoefficients kdk_constant(double t, double mu, double omega, bool strict) {
    if (!(mu > 0.0))
        throw ValidationError("kdk_constant: requires mu > 0");
    if (!(omega > 0.0))
        throw ValidationError("kdk_constant: requires omega > 0");
    const double t_star = std::numbers::pi / omega;
    if (!(std::abs(t) < t_star))
        throw HorizonError("kdk_constant: |t| >= pi/omega", t, t_star);

    KdkCoefficients c;
    c.t_star = t_star;
    if (t == 0.0)
        return c;
    c.f = c.e = mu * omega * std::tan(0.5 * omega * t);
    c.g = std::sin(omega * t) / (mu * omega);
    check_singularity(c, t, strict);
    return c;
}

KdkCoefficients kdk_constant_aba(double t, double mu, double omega,
                                 bool strict) {
    if (!(mu > 0.0))
        throw ValidationError("kdk_constant_aba: requires mu > 0");
    if (!(omega > 0.0))
        throw ValidationError("kdk_constant_aba: requires omega > 0");
    const double t_star = std::numbers::pi / omega;
    if (!(std::abs(t) < t_star))
        throw HorizonError("kdk_constant_aba: |t| >= pi/omega", t, t_star);

    KdkCoefficients c;
    c.t_star = t_star;
    if (t == 0.0)
        return c;
    c.f = c.e = std::tan(0.5 * omega * t) / (mu * omega);
    c.g = mu * omega * std::sin(omega * t);
    check_singularity(c, t, strict);
    return c;
}

KdkCoefficients kdk_quadratic(double t, double alpha, double beta,
                              double gamma, bool strict) {
    if (!(gamma > 0.0))
        throw ValidationError("kdk_quadratic: requires gamma > 0");
    const double z = alpha * gamma - beta * beta;
    const double t_star = z > 0.0 ? std::numbers::pi / std::sqrt(z) : inf;

    KdkCoefficients c;
    c.t_star = t_star;
    if (t == 0.0)
        return c;
    if (!(std::abs(t) < t_star))
        throw HorizonError("kdk_quadratic: |t| >= pi/eta", t, t_star);

    const double cc = cos_eta(z, t);
    const double ss = sinc_eta(z, t); // sin(eta t)/eta
    c.g = gamma * ss;
    if (c.g == 0.0)
        throw NumericalError("kdk_quadratic: g(t) = 0 with t != 0");
    c.f = (1.0 - cc + beta * ss) / c.g;
    c.e = (1.0 - cc - beta * ss) / c.g;
    check_singularity(c, t, strict);
    return c;
}

double two_exponential_t_star(double omega_l, double omega_r) {
    const auto g_of = [&](double t) {
        return std::sin(0.5 * omega_l * t) * std::cos(0.5 * omega_r * t) /
                   omega_l +
               std::cos(0.5 * omega_l * t) * std::sin(0.5 * omega_r * t) /
                   omega_r;
    };
    // g'(0) = 1 and g(2 pi / max(omega)) <= 0, so the first root lies in
    // (0, upper].  Scan finely enough to catch the fastest oscillation,
    // period 4 pi/(omega_l + omega_r), then bisect.
    const double upper = 2.0 * std::numbers::pi / std::max(omega_l, omega_r);
    const int n_scan = 8192;
    double lo = 0.0;
    double hi = upper;
    bool bracketed = false;
    double prev_t = 0.0;
    double prev_g = 0.0;
    for (int i = 1; i <= n_scan; ++i) {
        const double tt = upper * static_cast<double>(i) / n_scan;
        const double gg = g_of(tt);
        if (gg <= 0.0) {
            lo = prev_t;
            hi = tt;
            bracketed = true;
            break;
        }
        prev_t = tt;
        prev_g = gg;
    }
    (void)prev_g;
    if (!bracketed)
        return upper;
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (g_of(mid) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

KdkCoefficients kdk_two_exponential(double t, double omega_l, double omega_r,
                                    bool strict) {
    if (!(omega_l > 0.0) || !(omega_r > 0.0))
        throw ValidationError("kdk_two_exponential: requires omega_l, omega_r > 0");

    KdkCoefficients c;
    c.t_star = two_exponential_t_star(omega_l, omega_r);
    if (t == 0.0)
        return c;
    if (!(std::abs(t) < c.t_star))
        throw HorizonError("kdk_two_exponential: |t| beyond first root of g",
                           t, c.t_star);

    const double cl = std::cos(0.5 * omega_l * t);
    const double sl = std::sin(0.5 * omega_l * t);
    const double cr = std::cos(0.5 * omega_r * t);
    const double sr = std::sin(0.5 * omega_r * t);
    c.g = sl * cr / omega_l + cl * sr / omega_r;
    if (c.g == 0.0)
        throw NumericalError("kdk_two_exponential: g(t) = 0 with t != 0");
    c.f = (1.0 - cl * cr + (omega_l / omega_r) * sl * sr) / c.g;
    c.e = (1.0 - cl * cr + (omega_r / omega_l) * sl * sr) / c.g;
    check_singularity(c, t, strict);
    return c;
}

Classical2x2 classical_map(const KdkCoefficients& c) {
    // kick(f) . drift(g) . kick(e), e first:
    //   [1 0] [1 g] [1 0]
    //   [-f 1][0 1] [-e 1]
    return Classical2x2{1.0 - c.g * c.e, c.g,
                        -(c.f + c.e) + c.f * c.g * c.e, 1.0 - c.f * c.g};
}

KickChain merge_kick_chain(const SplittingScheme& scheme, double h,
                           const KdkProvider& provider) {
    const std::size_t m = scheme.stages();
    KickChain chain;
    chain.alpha.assign(m + 1, 0.0);
    chain.drift_g.assign(m, 0.0);

    for (std::size_t i = 0; i < m; ++i) {
        KdkCoefficients k;
        const double stage_dt = scheme.a[i] * h;
        if (stage_dt == 0.0) {
            k = KdkCoefficients{};
        } else {
            try {
                k = provider(i, stage_dt);
            } catch (const HorizonError& err) {
                throw HorizonError(scheme.name + " stage " +
                                       std::to_string(i + 1) + ": " +
                                       err.what(),
                                   err.t_requested, err.t_star,
                                   static_cast<int>(i));
            }
        }
        chain.alpha[i] += k.e;     // entry kick of stage i
        chain.alpha[i + 1] += k.f; // exit kick of stage i
        chain.drift_g[i] = k.g;
    }
    return chain;
}

} // namespace hfsplit
