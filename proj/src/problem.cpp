#include "hfsplit/problem.hpp"

#include "hfsplit/errors.hpp"
#include "hfsplit/fft.hpp"

#include <cmath>

namespace hfsplit {

double OmegaFamily::operator()(double t) const {
    switch (kind) {
    case Kind::constant:
        return value;
    case Kind::cosine:
        return amp * (1.0 + eps * std::cos(w * t));
    case Kind::pulse: {
        const double c = std::cosh(pb * (t - 2.0));
        const double om = w0 * (1.0 + pa * t / (c * c));
        return om * om;
    }
    case Kind::custom:
        return custom(t);
    }
    return value;
}

OmegaFamily OmegaFamily::constant(double omega_sq) {
    OmegaFamily f;
    f.kind = Kind::constant;
    f.value = omega_sq;
    return f;
}

OmegaFamily OmegaFamily::cosine(double amp, double eps, double w) {
    OmegaFamily f;
    f.kind = Kind::cosine;
    f.amp = amp;
    f.eps = eps;
    f.w = w;
    return f;
}

OmegaFamily OmegaFamily::pulse(double w0, double a, double b) {
    OmegaFamily f;
    f.kind = Kind::pulse;
    f.w0 = w0;
    f.pa = a;
    f.pb = b;
    return f;
}

OmegaFamily OmegaFamily::custom_fn(std::function<double(double)> omega_sq) {
    OmegaFamily f;
    f.kind = Kind::custom;
    f.custom = std::move(omega_sq);
    return f;
}

double energy(const WaveState& u, const Problem& p, double t) {
    const Grid& g = *u.grid;
    const std::size_t n = g.n;

    // du/dx = IFFT( i k FFT(u) ), same wavenumber table as the propagator.
    std::vector<std::complex<double>> du = u.amplitudes;
    FftPlan plan(n);
    plan.forward(du);
    for (std::size_t j = 0; j < n; ++j)
        du[j] *= std::complex<double>{0.0, g.wavenumbers[j]};
    plan.inverse(du);

    const double om_sq = p.omega_sq(t);
    const double sg = p.sigma_at(t);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g.points[i];
        const double dens = std::norm(u.amplitudes[i]);
        double v = 0.5 * p.mu * om_sq * x * x;
        if (p.perturbation)
            v += p.perturbation(x, t);
        e += std::norm(du[i]) / (2.0 * p.mu) + v * dens +
             0.5 * sg * dens * dens;
    }
    return g.h_x * e;
}

} // namespace hfsplit
