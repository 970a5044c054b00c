#pragma once

#include "hfsplit/grid.hpp"

#include <functional>
#include <memory>

namespace hfsplit {

// Trap frequency catalog.  Families are closed-form so configs stay
// declarative; operator() always returns the *squared* frequency.
struct OmegaFamily {
    enum class Kind { constant, cosine, pulse, custom };

    Kind kind = Kind::constant;
    double value = 1.0;              // constant: omega^2
    double amp = 4.0;                // cosine: omega^2(t) = amp*(1+eps*cos(w*t))
    double eps = 0.1;
    double w = 0.5;
    double w0 = 4.0;                 // pulse: omega(t) = w0*(1+pa*t/cosh^2(pb*(t-2)))
    double pa = 0.25;
    double pb = 2.0;
    std::function<double(double)> custom; // custom: omega^2(t)

    double operator()(double t) const;
    bool is_constant() const { return kind == Kind::constant; }

    static OmegaFamily constant(double omega_sq);
    static OmegaFamily cosine(double amp, double eps, double w);
    static OmegaFamily pulse(double w0, double a, double b);
    static OmegaFamily custom_fn(std::function<double(double)> omega_sq);
};

// The physics: i u' = p^2/(2 mu) u + (mu omega^2(t) x^2/2) u
//                     + (perturbation(x,t) + sigma(t)|u|^2) u.
// perturbation already includes its smallness factor; empty members are
// identically zero.
struct Problem {
    double mu = 1.0;
    OmegaFamily omega_sq = OmegaFamily::constant(1.0);
    std::function<double(double, double)> perturbation; // eps*V_I(x,t)
    std::function<double(double)> sigma;                // sigma(t)
    std::shared_ptr<const Grid> grid;

    double sigma_at(double t) const { return sigma ? sigma(t) : 0.0; }
    bool has_perturbation() const { return static_cast<bool>(perturbation); }
};

// h_x * sum [ |du/dx|^2/(2 mu) + (mu omega^2(t) x^2/2 + pert(x,t))|u|^2
//             + sigma(t)|u|^4/2 ],  derivative computed spectrally.
double energy(const WaveState& u, const Problem& p, double t);

} // namespace hfsplit
