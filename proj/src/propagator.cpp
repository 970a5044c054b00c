#include "hfsplit/propagator.hpp"

#include "hfsplit/errors.hpp"
#include "hfsplit/kernels.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace hfsplit {

std::string to_string(SplitKind k) {
    switch (k) {
    case SplitKind::f_split:
        return "f_split";
    case SplitKind::ho_fourier:
        return "ho_fourier";
    case SplitKind::ho_hermite:
        return "ho_hermite";
    }
    return "?";
}

std::string to_string(MagnusOrder m) {
    switch (m) {
    case MagnusOrder::exact_constant:
        return "exact";
    case MagnusOrder::magnus4:
        return "magnus4";
    case MagnusOrder::magnus6:
        return "magnus6";
    }
    return "?";
}

std::string MethodSpec::id() const {
    std::string s = scheme.name;
    switch (split) {
    case SplitKind::f_split:
        s += "_F";
        break;
    case SplitKind::ho_fourier:
        s += "_HF";
        if (magnus == MagnusOrder::magnus4)
            s += "_m4";
        else if (magnus == MagnusOrder::magnus6)
            s += "_m6";
        break;
    case SplitKind::ho_hermite:
        s += "_HM" + std::to_string(hermite_m);
        break;
    }
    return s;
}

namespace {

// Diagonal kick accumulated across adjacent stages (and across step
// boundaries when no output is requested).  Kicks preserve |u| exactly,
// so merging is exact as long as the frozen time matches.
struct PendingKick {
    double dt_b = 0.0;
    double t_frozen = 0.0;
    double alpha_x2 = 0.0;
    bool has_time = false;

    bool empty() const { return dt_b == 0.0 && alpha_x2 == 0.0; }
    void reset() { *this = PendingKick{}; }
};

class Stepper {
  public:
    Stepper(const Problem& p, const MethodSpec& m, double h)
        : p_(p), m_(m), h_(h), plan_(p.grid->n) {
        if (m.split == SplitKind::ho_hermite) {
            if (!p.omega_sq.is_constant())
                throw ValidationError(
                    "ho_hermite split requires a constant trap frequency");
            if (m.hermite_m < 1)
                throw ValidationError("ho_hermite split requires hermite_m >= 1");
            const double w_sq = p.omega_sq(0.0);
            if (!(w_sq > 0.0))
                throw ValidationError(
                    "ho_hermite split requires a positive trap frequency");
            basis_ = hermite_functions(m.hermite_m, p.grid, std::sqrt(w_sq),
                                       p.mu);
            if (!basis_->boundary_resolved)
                warnings_.push_back(
                    "hermite basis not decayed at the domain boundary");
        }
        if (m.split != SplitKind::f_split &&
            m.magnus == MagnusOrder::exact_constant &&
            !p.omega_sq.is_constant())
            throw ValidationError(
                "exact_constant stage propagator requires constant frequency");
        // For a constant frequency the stage coefficients do not depend
        // on the step start, so the chain is computed once.
        if (m_.split == SplitKind::ho_fourier && p_.omega_sq.is_constant())
            fixed_chain_ = merge_kick_chain(
                m_.scheme, h_, [&](std::size_t, double stage_dt) {
                    return stage_kdk(p_, 0.0, stage_dt, m_.magnus);
                });
    }

    // Advances u from t_n to t_end.  flush_trailing controls whether the
    // trailing merged kick is applied now (last step / dense output) or
    // left pending for the next step.
    void run_step(WaveState& u, double t_n, double t_end, bool flush_trailing,
                  CostCounter& cost) {
        const std::size_t m = m_.scheme.stages();
        const auto& a = m_.scheme.a;
        const auto& b = m_.scheme.b;

        double stage_sum = 0.0;
        std::optional<KickChain> chain;
        if (m_.split == SplitKind::ho_fourier) {
            if (fixed_chain_)
                chain = *fixed_chain_;
            else
                chain = merge_kick_chain(
                    m_.scheme, h_, [&](std::size_t i, double stage_dt) {
                        // stage i starts at t_n + (a_1+...+a_{i-1}) h
                        double sum = 0.0;
                        for (std::size_t j = 0; j < i; ++j)
                            sum += a[j];
                        return stage_kdk(p_, t_n + sum * h_, stage_dt,
                                         m_.magnus);
                    });
            accumulate_harmonic(chain->alpha[0]);
        }

        for (std::size_t i = 0; i < m; ++i) {
            const double t_stage =
                i == 0 ? t_n : t_n + stage_sum * h_;
            accumulate_b(b[i] * h_, t_stage);

            switch (m_.split) {
            case SplitKind::f_split: {
                accumulate_harmonic(b[i] * h_ * p_.mu * p_.omega_sq(t_stage));
                flush(u, cost);
                if (const double theta = a[i] * h_ / p_.mu; theta != 0.0)
                    drift(u, theta, cost);
                break;
            }
            case SplitKind::ho_fourier: {
                flush(u, cost);
                if (chain->drift_g[i] != 0.0)
                    drift(u, chain->drift_g[i], cost);
                accumulate_harmonic(chain->alpha[i + 1]);
                break;
            }
            case SplitKind::ho_hermite: {
                flush(u, cost);
                if (a[i] * h_ != 0.0)
                    u = propagate_hermite(u, *basis_, a[i] * h_, &cost);
                break;
            }
            }
            stage_sum += a[i];
        }

        // Trailing kick, frozen at the step end time.
        accumulate_b(b[m] * h_, t_end);
        if (m_.split == SplitKind::f_split)
            accumulate_harmonic(b[m] * h_ * p_.mu * p_.omega_sq(t_end));
        if (flush_trailing)
            flush(u, cost);

        u.time = t_end;
    }

    void flush(WaveState& u, CostCounter& cost) {
        if (pending_.empty()) {
            pending_.reset();
            return;
        }
        const auto phase = build_kick_phase(p_, u, pending_.t_frozen,
                                            pending_.dt_b, pending_.alpha_x2);
        apply_kick(u, phase, cost);
        pending_.reset();
    }

    std::vector<std::string> take_warnings() { return std::move(warnings_); }

  private:
    void accumulate_b(double dt_b, double t_frozen) {
        if (dt_b == 0.0)
            return;
        pending_.dt_b += dt_b;
        if (!pending_.has_time) {
            pending_.t_frozen = t_frozen;
            pending_.has_time = true;
        }
        // Merges only ever join kicks frozen at the same instant: within
        // a step across zero-length drifts, or at the boundary where the
        // trailing and leading freeze times are both the step end.
    }

    void accumulate_harmonic(double alpha) {
        if (alpha != 0.0)
            pending_.alpha_x2 += alpha;
    }

    void drift(WaveState& u, double theta, CostCounter& cost) {
        auto [it, inserted] = drift_caches_.try_emplace(theta);
        apply_drift(u, theta, plan_, &it->second, cost);
    }

    const Problem& p_;
    const MethodSpec& m_;
    double h_;
    FftPlan plan_;
    PendingKick pending_;
    std::map<double, DriftCache> drift_caches_;
    std::optional<HermiteBasis> basis_;
    std::optional<KickChain> fixed_chain_;
    std::vector<std::string> warnings_;
};

void check_finite(const WaveState& u) {
    const double n2 = kernels::sum_abs2(u.amplitudes);
    if (!std::isfinite(n2))
        throw NumericalError("propagation produced non-finite amplitudes");
}

} // namespace

StepReport step(const WaveState& u, const Problem& p, const MethodSpec& m,
                double h) {
    if (!same_grid(*u.grid, *p.grid))
        throw ValidationError("step: state/problem grid mismatch");
    StepReport rep;
    rep.state = u;
    Stepper stepper(p, m, h);
    stepper.run_step(rep.state, u.time, u.time + h, true, rep.cost);
    rep.warnings = stepper.take_warnings();
    check_finite(rep.state);
    return rep;
}

PropagationResult propagate(const WaveState& u0, const Problem& p,
                            const MethodSpec& m, double t_final,
                            long long n_steps, const StepObserver& observer) {
    if (n_steps < 1)
        throw ValidationError("propagate: requires n_steps >= 1");
    if (!same_grid(*u0.grid, *p.grid))
        throw ValidationError("propagate: state/problem grid mismatch");

    const double t0 = u0.time;
    const double h = (t_final - t0) / static_cast<double>(n_steps);

    PropagationResult res;
    res.state = u0;
    Stepper stepper(p, m, h);
    for (long long s = 0; s < n_steps; ++s) {
        const double t_n = t0 + static_cast<double>(s) * h;
        const double t_end =
            s + 1 == n_steps ? t_final
                             : t0 + static_cast<double>(s + 1) * h;
        const bool flush_trailing = observer != nullptr || s + 1 == n_steps;
        stepper.run_step(res.state, t_n, t_end, flush_trailing, res.cost);
        if (observer)
            observer(res.state, s, res.cost);
    }
    res.warnings = stepper.take_warnings();
    check_finite(res.state);
    return res;
}

WaveState reference_solution(const Problem& p, const WaveState& u0,
                             double t_final, long long finest_steps,
                             int multiplier, double richardson_tol) {
    MethodSpec ref;
    ref.scheme = builtin_scheme("srkn6_4");
    const bool no_trap =
        p.omega_sq.is_constant() && p.omega_sq(0.0) == 0.0;
    ref.split = no_trap ? SplitKind::f_split : SplitKind::ho_fourier;
    ref.magnus = p.omega_sq.is_constant() ? MagnusOrder::exact_constant
                                          : MagnusOrder::magnus6;

    const long long n_ref =
        std::max<long long>(256, multiplier * std::max<long long>(1, finest_steps));
    const WaveState coarse = propagate(u0, p, ref, t_final, n_ref).state;
    const WaveState fine = propagate(u0, p, ref, t_final, 2 * n_ref).state;
    const double diff = error_l2(coarse, fine);
    if (!(diff < richardson_tol))
        throw NumericalError(
            "reference_solution: Richardson check failed, step-halving "
            "changed the result by " +
            std::to_string(diff));
    return fine;
}

OrderFit fit_order(const std::vector<double>& h, const std::vector<double>& err,
                   double floor) {
    if (h.size() != err.size())
        throw ValidationError("fit_order: length mismatch");
    OrderFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const bool usable = std::isfinite(err[i]) && err[i] > floor;
        fit.points.push_back({h[i], err[i], usable});
        if (!usable)
            continue;
        const double lx = std::log(h[i]);
        const double ly = std::log(err[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    fit.n_used = n;
    if (n >= 2) {
        const double den = static_cast<double>(n) * sxx - sx * sx;
        fit.slope = (static_cast<double>(n) * sxy - sx * sy) / den;
    }
    return fit;
}

OrderFit empirical_order(const SplittingScheme& scheme, SplitKind split,
                         MagnusOrder magnus, const Problem& p,
                         const WaveState& u0, double t_final,
                         const std::vector<long long>& step_counts,
                         const WaveState& reference, double floor) {
    MethodSpec m;
    m.scheme = scheme;
    m.split = split;
    m.magnus = magnus;
    std::vector<double> hs, errs;
    for (long long n : step_counts) {
        const WaveState out = propagate(u0, p, m, t_final, n).state;
        hs.push_back((t_final - u0.time) / static_cast<double>(n));
        errs.push_back(error_l2(out, reference));
    }
    return fit_order(hs, errs, floor);
}

TwoEpsOrderFit two_eps_order(const std::vector<double>& h,
                             const std::vector<double>& err_eps1,
                             const std::vector<double>& err_eps2, double eps1,
                             double eps2, double floor) {
    if (h.size() != err_eps1.size() || h.size() != err_eps2.size())
        throw ValidationError("two_eps_order: length mismatch");
    // err(eps, h) ~ C1(h) eps + C2(h) eps^2, solved pointwise in h.
    const double det = eps1 * eps2 * eps2 - eps2 * eps1 * eps1;
    std::vector<double> h1, c1, h2, c2;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double c1i =
            (err_eps1[i] * eps2 * eps2 - err_eps2[i] * eps1 * eps1) / det;
        const double c2i = (eps1 * err_eps2[i] - eps2 * err_eps1[i]) / det;
        if (std::isfinite(c1i) && c1i * eps1 > floor) {
            h1.push_back(h[i]);
            c1.push_back(c1i);
        }
        if (std::isfinite(c2i) && c2i * eps1 * eps1 > floor) {
            h2.push_back(h[i]);
            c2.push_back(c2i);
        }
    }
    TwoEpsOrderFit fit;
    const OrderFit f1 = fit_order(h1, c1, 0.0);
    const OrderFit f2 = fit_order(h2, c2, 0.0);
    fit.slope_eps = f1.slope;
    fit.n_used_eps = f1.n_used;
    fit.slope_eps_sq = f2.slope;
    fit.n_used_eps_sq = f2.n_used;
    return fit;
}

} // namespace hfsplit
