// hfsplit command line: experiment presets, configs, scheme inspection
// and empirical order checks.  Exit codes: 0 ok, 2 validation error,
// 3 numerical failure.

#include "hfsplit/errors.hpp"
#include "hfsplit/experiments.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

using namespace hfsplit;
using namespace hfsplit::experiments;

int cmd_run(const std::string& preset, const std::string& config_path,
            const std::vector<std::string>& overrides, std::string out_path,
            const std::string& plot_kind) {
    ExperimentConfig cfg;
    if (!preset.empty() && !config_path.empty())
        throw ValidationError("run: pass either --preset or --config, not both");
    if (!preset.empty())
        cfg = preset_config(preset);
    else if (!config_path.empty())
        cfg = load_config_file(config_path);
    else
        throw ValidationError("run: need --preset or --config");
    for (const std::string& ov : overrides)
        apply_override(cfg, ov);
    if (!out_path.empty())
        cfg.out_path = out_path;
    if (cfg.out_path.empty())
        cfg.out_path = cfg.preset + ".csv";

    const RunOutput out = run_experiment(cfg);
    write_text_file(cfg.out_path, out.csv);
    std::cout << "wrote " << cfg.out_path << " (" << out.rows.size()
              << " rows)\n";
    for (const std::string& note : out.notes)
        std::cout << "  " << note << "\n";
    if (!plot_kind.empty()) {
        const std::string script = emit_plot(cfg.out_path, plot_kind);
        const std::string script_path = cfg.out_path + "." + plot_kind + ".gp";
        write_text_file(script_path, script);
        std::cout << "wrote " << script_path << "\n";
    }
    return 0;
}

void print_scheme(const SplittingScheme& s) {
    std::printf("%s  (order %d", s.name.c_str(), s.declared_order);
    if (s.effective_order)
        std::printf(", effective (%d,%d)", s.effective_order->first,
                    s.effective_order->second);
    std::printf(")%s  max|a|=%.17g\n", s.is_palindromic ? "  palindromic" : "",
                s.max_abs_a);
    std::printf("  b:");
    for (double v : s.b)
        std::printf(" %.17g", v);
    std::printf("\n  a:");
    for (double v : s.a)
        std::printf(" %.17g", v);
    std::printf("\n");
}

int cmd_schemes_list() {
    for (const std::string& name : builtin_scheme_names())
        print_scheme(builtin_scheme(name));
    return 0;
}

int cmd_schemes_validate(const std::string& name) {
    const SplittingScheme s = builtin_scheme(name);
    const SchemeReport rep = validate(s);
    std::printf("%s: sum(a)=%.17g sum(b)=%.17g consistent=%s palindromic=%s "
                "fsal=%s positive=%s max|a|=%.17g\n",
                s.name.c_str(), rep.sum_a, rep.sum_b,
                rep.consistent ? "yes" : "no", rep.palindromic ? "yes" : "no",
                rep.fsal_eligible ? "yes" : "no",
                rep.all_coefficients_positive ? "yes" : "no", rep.max_abs_a);
    for (const std::string& f : rep.findings)
        std::printf("  finding: %s\n", f.c_str());
    return rep.findings.empty() ? 0 : 2;
}

int cmd_order_check(const std::string& scheme_name, const std::string& preset,
                    const std::string& split_name) {
    ExperimentConfig cfg = preset_config(preset);
    if (cfg.kind != ExperimentKind::sweep)
        throw ValidationError("order-check: preset must be a sweep preset");
    const Problem p = problem_from_config(cfg);
    const WaveState u0 = initial_state_from_config(cfg);

    const SplittingScheme scheme = builtin_scheme(scheme_name);
    const SplitKind split =
        split_name == "f_split" ? SplitKind::f_split : SplitKind::ho_fourier;
    const MagnusOrder magnus = p.omega_sq.is_constant()
                                   ? MagnusOrder::exact_constant
                                   : MagnusOrder::magnus6;

    std::vector<long long> steps = {16, 23, 32, 45, 64, 91, 128, 181, 256};
    const WaveState ref = reference_solution(p, u0, cfg.t_final, steps.back(),
                                             cfg.reference_multiplier,
                                             cfg.reference_tol);
    const OrderFit fit = empirical_order(scheme, split, magnus, p, u0,
                                         cfg.t_final, steps, ref);
    std::printf("scheme %s on %s (%s): slope %.3f over %zu points\n",
                scheme_name.c_str(), preset.c_str(), split_name.c_str(),
                fit.slope, fit.n_used);
    for (const auto& pt : fit.points)
        std::printf("  h=%-12.6g err=%-12.6g%s\n", pt.h, pt.error,
                    pt.used ? "" : "  (excluded)");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral split-step integrators for the Gross-Pitaevskii "
                 "equation in a (time-dependent) harmonic trap"};
    app.require_subcommand(1);

    std::string preset, config_path, out_path, plot_kind;
    std::vector<std::string> overrides;
    CLI::App* run = app.add_subcommand("run", "run a preset or config sweep");
    run->add_option("--preset", preset, "preset name");
    run->add_option("--config", config_path, "JSON config path");
    run->add_option("--override", overrides, "key=value override")
        ->take_all();
    run->add_option("--out", out_path, "output CSV path");
    run->add_option("--plot", plot_kind,
                    "emit gnuplot script: error_vs_cost|error_vs_T|order_fit");

    CLI::App* schemes = app.add_subcommand("schemes", "scheme catalog");
    CLI::App* schemes_list = schemes->add_subcommand("list", "print catalog");
    std::string validate_name;
    CLI::App* schemes_validate =
        schemes->add_subcommand("validate", "validate one scheme");
    schemes_validate->add_option("name", validate_name)->required();

    std::string oc_scheme, oc_problem = "fig3_sigma1", oc_split = "ho_fourier";
    CLI::App* order = app.add_subcommand("order-check",
                                         "empirical convergence order");
    order->add_option("--scheme", oc_scheme)->required();
    order->add_option("--problem", oc_problem, "sweep preset name");
    order->add_option("--split", oc_split, "f_split|ho_fourier");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(preset, config_path, overrides, out_path,
                           plot_kind);
        if (schemes->parsed()) {
            if (schemes_list->parsed())
                return cmd_schemes_list();
            if (schemes_validate->parsed())
                return cmd_schemes_validate(validate_name);
            return cmd_schemes_list();
        }
        if (order->parsed())
            return cmd_order_check(oc_scheme, oc_problem, oc_split);
    } catch (const hfsplit::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const hfsplit::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
