#pragma once

#include "hfsplit/propagator.hpp"

#include <string>
#include <vector>

namespace hfsplit::experiments {

struct MethodChoice {
    std::string scheme;
    SplitKind split = SplitKind::ho_fourier;
    MagnusOrder magnus = MagnusOrder::exact_constant;
    std::size_t hermite_m = 0;
};

enum class ExperimentKind {
    sweep,         // error vs cost over step counts / budgets
    single_step_t, // one step to each t_final in the sweep
    hermite_count  // required basis size per initial displacement
};

struct ExperimentConfig {
    int schema = 1;
    std::string preset = "custom";
    ExperimentKind kind = ExperimentKind::sweep;

    // problem
    double domain_a = -10.0;
    double domain_b = 10.0;
    std::size_t n = 1024;
    double mu = 1.0;
    OmegaFamily omega = OmegaFamily::constant(1.0);
    std::string perturbation_family = "none"; // none | quartic
    double perturbation_eps = 0.0;            // quartic: eps*x^4/4
    double sigma = 0.0;
    std::string initial_family = "gaussian";
    double initial_delta = 0.0;

    std::vector<MethodChoice> methods;

    std::vector<long long> sweep_steps;
    std::vector<long long> sweep_budgets; // exponential budgets
    std::vector<double> sweep_t_finals;   // single_step_t only
    std::vector<double> hermite_deltas;   // hermite_count only
    double hermite_tolerance = 1e-11;

    double t_final = 10.0;
    std::string reference_mode = "auto"; // auto | analytic
    int reference_multiplier = 64;
    double reference_tol = 1e-12;
    bool timing = true;
    std::string out_path;
};

struct ResultRow {
    std::string preset;
    std::string method;
    std::string scheme;
    std::string split;
    std::string magnus;
    std::size_t hermite_m = 0;
    long long n_steps = 0;
    double t_final = 0.0;
    long long n_fft_pairs = 0;
    long long n_exponentials = 0;
    double l2_error_weighted = 0.0;
    double l2_error_unweighted = 0.0;
    double energy_error = 0.0;
    double norm_defect = 0.0;
    double wall_time_seconds = 0.0;
};

std::vector<std::string> preset_names();
ExperimentConfig preset_config(const std::string& name);

// "k=v" overrides for a limited key set (n, a, b, sigma, delta, t_final,
// steps, timing, reference_multiplier, out).  Unknown keys throw.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

// JSON config document; validation errors name the offending field.
ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

struct RunOutput {
    std::vector<ResultRow> rows;
    std::string csv;                 // full document, header included
    std::vector<std::string> notes;  // e.g. hermite_count summaries
};

// Executes the configured runs on a worker pool (HFSPLIT_WORKERS bounds
// the size) and assembles the CSV deterministically.
RunOutput run_experiment(const ExperimentConfig& cfg);

// Builds problem/state from a config (exposed for the order-check CLI).
Problem problem_from_config(const ExperimentConfig& cfg);
WaveState initial_state_from_config(const ExperimentConfig& cfg);

// Analytic coherent-state evolution of the displaced ground state under
// the unit-frequency linear trap; reference_mode == "analytic".
WaveState analytic_coherent_state(std::shared_ptr<const Grid> grid,
                                  double delta, double t);

void write_text_file(const std::string& path, const std::string& text);

// Self-contained gnuplot script (data embedded) for a CSV produced by
// run_experiment.  kind: error_vs_cost | error_vs_T | order_fit.
std::string emit_plot(const std::string& csv_path, const std::string& kind);

} // namespace hfsplit::experiments
