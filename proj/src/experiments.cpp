#include "hfsplit/experiments.hpp"

#include "hfsplit/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace hfsplit::experiments {

namespace {

using json = nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

unsigned worker_count(std::size_t n_jobs) {
    unsigned w = std::thread::hardware_concurrency();
    if (w == 0)
        w = 1;
    if (const char* env = std::getenv("HFSPLIT_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1)
            w = static_cast<unsigned>(v);
    }
    return static_cast<unsigned>(
        std::min<std::size_t>(w, std::max<std::size_t>(1, n_jobs)));
}

// Simple pool: jobs pull indices off an atomic counter; the first
// exception wins and is rethrown after join.
void run_jobs(std::size_t n_jobs, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = worker_count(n_jobs);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n_jobs; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_jobs)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back(body);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

SplitKind parse_split(const std::string& s, const std::string& field) {
    if (s == "f_split")
        return SplitKind::f_split;
    if (s == "ho_fourier")
        return SplitKind::ho_fourier;
    if (s == "ho_hermite")
        return SplitKind::ho_hermite;
    throw ValidationError(field + ": unknown split '" + s + "'");
}

MagnusOrder parse_magnus(const std::string& s, const std::string& field) {
    if (s == "exact" || s == "exact_constant")
        return MagnusOrder::exact_constant;
    if (s == "magnus4")
        return MagnusOrder::magnus4;
    if (s == "magnus6")
        return MagnusOrder::magnus6;
    throw ValidationError(field + ": unknown magnus order '" + s + "'");
}

MethodSpec to_method_spec(const MethodChoice& c, const std::string& field) {
    MethodSpec m;
    try {
        m.scheme = builtin_scheme(c.scheme);
    } catch (const ValidationError& e) {
        throw ValidationError(field + ".scheme: " + e.what());
    }
    m.split = c.split;
    m.magnus = c.magnus;
    m.hermite_m = c.hermite_m;
    if (m.split == SplitKind::ho_hermite && m.hermite_m < 1)
        throw ValidationError(field + ".m: ho_hermite requires m >= 1");
    return m;
}

long long per_step_exponentials(const MethodSpec& m) {
    const std::size_t stages = m.scheme.stages();
    long long kicks = 0;
    long long diagonals = 0;
    switch (m.split) {
    case SplitKind::ho_fourier:
        kicks = static_cast<long long>(stages) + 1;
        diagonals = static_cast<long long>(stages);
        break;
    case SplitKind::f_split:
    case SplitKind::ho_hermite:
        for (double bi : m.scheme.b)
            if (bi != 0.0)
                ++kicks;
        diagonals = static_cast<long long>(stages);
        break;
    }
    return std::max<long long>(1, kicks + diagonals - 1); // FSAL merge
}

} // namespace

Problem problem_from_config(const ExperimentConfig& cfg) {
    Problem p;
    p.mu = cfg.mu;
    p.omega_sq = cfg.omega;
    p.grid = make_grid(cfg.domain_a, cfg.domain_b, cfg.n);
    if (cfg.sigma != 0.0) {
        const double s = cfg.sigma;
        p.sigma = [s](double) { return s; };
    }
    if (cfg.perturbation_family == "quartic") {
        const double eps = cfg.perturbation_eps;
        p.perturbation = [eps](double x, double) {
            return eps * 0.25 * x * x * x * x;
        };
    } else if (cfg.perturbation_family != "none") {
        throw ValidationError("problem.perturbation.family: unknown family '" +
                              cfg.perturbation_family + "'");
    }
    return p;
}

WaveState initial_state_from_config(const ExperimentConfig& cfg) {
    if (cfg.initial_family != "gaussian")
        throw ValidationError("problem.initial.family: unknown family '" +
                              cfg.initial_family + "'");
    auto grid = make_grid(cfg.domain_a, cfg.domain_b, cfg.n);
    return displaced_gaussian_state(grid, cfg.initial_delta);
}

WaveState analytic_coherent_state(std::shared_ptr<const Grid> grid,
                                  double delta, double t) {
    WaveState u = make_state(std::move(grid));
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double amp = std::pow(std::numbers::pi, -0.25);
    const double theta0 = -0.5 * t + 0.25 * delta * delta * std::sin(2.0 * t);
    for (std::size_t i = 0; i < u.grid->n; ++i) {
        const double x = u.grid->points[i];
        const double d = x - delta * c;
        const double phase = theta0 - delta * s * x;
        u.amplitudes[i] = std::exp(-0.5 * d * d) *
                          std::complex<double>{std::cos(phase), std::sin(phase)} *
                          amp;
    }
    u.time = t;
    return u;
}

std::vector<std::string> preset_names() {
    return {"fig1_single_step", "hermite_count",   "fig3_sigma0.01",
            "fig3_sigma1",      "fig3_sigma100",   "fig4_6_methods",
            "fig4_6_sigma0.01", "fig4_6_sigma1",   "fig4_6_sigma100",
            "timedep_cos",      "timedep_pulse"};
}

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig cfg;
    cfg.preset = name;

    const auto fig3_problem = [&cfg](double sigma) {
        cfg.kind = ExperimentKind::sweep;
        cfg.n = 1024;
        cfg.mu = 1.0;
        cfg.omega = OmegaFamily::constant(1.0);
        cfg.sigma = sigma;
        cfg.initial_delta = 1.0;
        cfg.t_final = 10.0;
        if (sigma <= 0.01) {
            cfg.domain_a = -20.0;
            cfg.domain_b = 20.0;
            cfg.sweep_steps = {25, 50, 100, 200, 400, 800};
        } else {
            cfg.domain_a = -30.0;
            cfg.domain_b = 30.0;
            cfg.sweep_steps = sigma <= 1.0
                                  ? std::vector<long long>{50, 100, 200, 400,
                                                           800, 1600}
                                  : std::vector<long long>{400, 800, 1600,
                                                           3200};
        }
    };
    const auto hermite_ms = [](double sigma) -> std::vector<std::size_t> {
        if (sigma <= 0.01)
            return {16, 32};
        if (sigma <= 1.0)
            return {32, 64};
        return {150};
    };

    if (name == "fig1_single_step") {
        cfg.kind = ExperimentKind::single_step_t;
        cfg.domain_a = -10.0;
        cfg.domain_b = 10.0;
        cfg.n = 1024;
        cfg.omega = OmegaFamily::constant(1.0);
        cfg.sigma = 0.0;
        cfg.initial_delta = 0.0;
        cfg.reference_mode = "analytic";
        cfg.methods = {{"strang_bab", SplitKind::ho_fourier,
                        MagnusOrder::exact_constant, 0}};
        const double pi = std::numbers::pi;
        const std::vector<double> mags = {0.5,  1.0,  1.5, 2.0,
                                          2.5,  3.0,  3.05, 3.1,
                                          3.12, 3.13, pi - 1e-3};
        for (double m : mags)
            cfg.sweep_t_finals.push_back(-m);
        for (double m : mags)
            cfg.sweep_t_finals.push_back(m);
        std::sort(cfg.sweep_t_finals.begin(), cfg.sweep_t_finals.end());
        return cfg;
    }
    if (name == "hermite_count") {
        cfg.kind = ExperimentKind::hermite_count;
        cfg.domain_a = -10.0;
        cfg.domain_b = 10.0;
        cfg.n = 512;
        cfg.omega = OmegaFamily::constant(1.0);
        cfg.t_final = 10.0;
        cfg.hermite_deltas = {0.1, 2.0};
        cfg.hermite_tolerance = 1e-11;
        return cfg;
    }
    if (name == "fig3_sigma0.01" || name == "fig3_sigma1" ||
        name == "fig3_sigma100") {
        const double sigma = name == "fig3_sigma0.01" ? 0.01
                             : name == "fig3_sigma1"  ? 1.0
                                                      : 100.0;
        fig3_problem(sigma);
        cfg.methods = {{"strang_bab", SplitKind::f_split,
                        MagnusOrder::exact_constant, 0},
                       {"strang_bab", SplitKind::ho_fourier,
                        MagnusOrder::exact_constant, 0}};
        for (std::size_t m : hermite_ms(sigma))
            cfg.methods.push_back({"strang_bab", SplitKind::ho_hermite,
                                   MagnusOrder::exact_constant, m});
        return cfg;
    }
    if (name == "fig4_6_methods" || name == "fig4_6_sigma0.01" ||
        name == "fig4_6_sigma1" || name == "fig4_6_sigma100") {
        const double sigma = name == "fig4_6_sigma1"    ? 1.0
                             : name == "fig4_6_sigma100" ? 100.0
                                                         : 0.01;
        fig3_problem(sigma);
        const std::size_t m_hm = hermite_ms(sigma).back();
        for (const char* sch :
             {"strang_bab", "ni4_82", "srkn6_4", "ni5_84"}) {
            cfg.methods.push_back({sch, SplitKind::f_split,
                                   MagnusOrder::exact_constant, 0});
            cfg.methods.push_back({sch, SplitKind::ho_fourier,
                                   MagnusOrder::exact_constant, 0});
            cfg.methods.push_back({sch, SplitKind::ho_hermite,
                                   MagnusOrder::exact_constant, m_hm});
        }
        return cfg;
    }
    if (name == "timedep_cos" || name == "timedep_pulse") {
        cfg.kind = ExperimentKind::sweep;
        cfg.domain_a = -20.0;
        cfg.domain_b = 20.0;
        cfg.n = 1024;
        cfg.omega = name == "timedep_cos" ? OmegaFamily::cosine(4.0, 0.1, 0.5)
                                          : OmegaFamily::pulse(4.0, 0.25, 2.0);
        cfg.perturbation_family = "quartic";
        cfg.perturbation_eps = 0.01;
        cfg.sigma = 0.0;
        cfg.initial_delta = 1.0;
        cfg.t_final = 10.0;
        cfg.sweep_steps = {32, 64, 128, 256, 512};
        for (const char* sch : {"srkn6_4", "ni5_84"}) {
            cfg.methods.push_back({sch, SplitKind::f_split,
                                   MagnusOrder::exact_constant, 0});
            cfg.methods.push_back({sch, SplitKind::ho_fourier,
                                   MagnusOrder::magnus4, 0});
            cfg.methods.push_back({sch, SplitKind::ho_fourier,
                                   MagnusOrder::magnus6, 0});
        }
        return cfg;
    }
    throw ValidationError("preset: unknown preset '" + name + "'");
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ValidationError("override: expected key=value, got '" +
                              assignment + "'");
    const std::string key = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    const auto as_double = [&] {
        try {
            return std::stod(value);
        } catch (...) {
            throw ValidationError("override " + key + ": bad number '" +
                                  value + "'");
        }
    };
    if (key == "n")
        cfg.n = static_cast<std::size_t>(as_double());
    else if (key == "a")
        cfg.domain_a = as_double();
    else if (key == "b")
        cfg.domain_b = as_double();
    else if (key == "sigma")
        cfg.sigma = as_double();
    else if (key == "delta")
        cfg.initial_delta = as_double();
    else if (key == "t_final")
        cfg.t_final = as_double();
    else if (key == "timing")
        cfg.timing = as_double() != 0.0;
    else if (key == "reference_multiplier")
        cfg.reference_multiplier = static_cast<int>(as_double());
    else if (key == "out")
        cfg.out_path = value;
    else if (key == "steps") {
        cfg.sweep_steps.clear();
        std::stringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ','))
            cfg.sweep_steps.push_back(std::stoll(tok));
        if (cfg.sweep_steps.empty())
            throw ValidationError("override steps: empty list");
    } else
        throw ValidationError("override: unknown key '" + key + "'");
}

namespace {

double get_num(const json& j, const std::string& field) {
    if (!j.is_number())
        throw ValidationError(field + ": expected a number");
    return j.get<double>();
}

} // namespace

ExperimentConfig parse_config_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    if (!doc.contains("schema"))
        throw ValidationError("schema: missing");
    cfg.schema = doc["schema"].get<int>();
    if (cfg.schema != 1)
        throw ValidationError("schema: unsupported version " +
                              std::to_string(cfg.schema));
    if (doc.contains("preset") && doc["preset"].is_string())
        cfg.preset = doc["preset"].get<std::string>();

    if (!doc.contains("problem"))
        throw ValidationError("problem: missing");
    const json& pr = doc["problem"];
    cfg.domain_a = get_num(pr.at("a"), "problem.a");
    cfg.domain_b = get_num(pr.at("b"), "problem.b");
    cfg.n = static_cast<std::size_t>(get_num(pr.at("n"), "problem.n"));
    cfg.mu = pr.contains("mu") ? get_num(pr["mu"], "problem.mu") : 1.0;

    if (pr.contains("omega")) {
        const json& om = pr["omega"];
        const std::string fam = om.at("family").get<std::string>();
        if (fam == "constant")
            cfg.omega = OmegaFamily::constant(
                get_num(om.at("omega_sq"), "problem.omega.omega_sq"));
        else if (fam == "cosine")
            cfg.omega = OmegaFamily::cosine(
                get_num(om.at("amp"), "problem.omega.amp"),
                get_num(om.at("eps"), "problem.omega.eps"),
                get_num(om.at("w"), "problem.omega.w"));
        else if (fam == "pulse")
            cfg.omega = OmegaFamily::pulse(
                get_num(om.at("w0"), "problem.omega.w0"),
                get_num(om.at("a"), "problem.omega.a"),
                get_num(om.at("b"), "problem.omega.b"));
        else
            throw ValidationError("problem.omega.family: unknown family '" +
                                  fam + "'");
    }
    if (pr.contains("perturbation")) {
        const json& pe = pr["perturbation"];
        cfg.perturbation_family = pe.at("family").get<std::string>();
        if (cfg.perturbation_family == "quartic")
            cfg.perturbation_eps =
                get_num(pe.at("eps"), "problem.perturbation.eps");
        else if (cfg.perturbation_family != "none")
            throw ValidationError(
                "problem.perturbation.family: unknown family '" +
                cfg.perturbation_family + "'");
    }
    cfg.sigma = pr.contains("sigma") ? get_num(pr["sigma"], "problem.sigma")
                                     : 0.0;
    if (pr.contains("initial")) {
        const json& in = pr["initial"];
        cfg.initial_family = in.at("family").get<std::string>();
        cfg.initial_delta = in.contains("delta")
                                ? get_num(in["delta"], "problem.initial.delta")
                                : 0.0;
    }

    if (!doc.contains("methods") || !doc["methods"].is_array() ||
        doc["methods"].empty())
        throw ValidationError("methods: must be a nonempty array");
    std::size_t idx = 0;
    for (const json& jm : doc["methods"]) {
        const std::string field = "methods[" + std::to_string(idx) + "]";
        MethodChoice c;
        c.scheme = jm.at("scheme").get<std::string>();
        try {
            builtin_scheme(c.scheme);
        } catch (const ValidationError& e) {
            throw ValidationError(field + ".scheme: " + e.what());
        }
        c.split = parse_split(jm.at("split").get<std::string>(),
                              field + ".split");
        if (jm.contains("magnus"))
            c.magnus = parse_magnus(jm["magnus"].get<std::string>(),
                                    field + ".magnus");
        if (jm.contains("m"))
            c.hermite_m =
                static_cast<std::size_t>(get_num(jm["m"], field + ".m"));
        cfg.methods.push_back(c);
        ++idx;
    }

    if (!doc.contains("sweep"))
        throw ValidationError("sweep: missing");
    const json& sw = doc["sweep"];
    if (sw.contains("n_steps"))
        for (const json& v : sw["n_steps"])
            cfg.sweep_steps.push_back(v.get<long long>());
    if (sw.contains("budgets"))
        for (const json& v : sw["budgets"])
            cfg.sweep_budgets.push_back(v.get<long long>());
    if (sw.contains("t_final")) {
        cfg.kind = ExperimentKind::single_step_t;
        for (const json& v : sw["t_final"])
            cfg.sweep_t_finals.push_back(v.get<double>());
    }
    if (cfg.sweep_steps.empty() && cfg.sweep_budgets.empty() &&
        cfg.sweep_t_finals.empty())
        throw ValidationError("sweep: must list n_steps, budgets or t_final");

    if (doc.contains("t_final"))
        cfg.t_final = get_num(doc["t_final"], "t_final");
    if (doc.contains("reference")) {
        const json& rf = doc["reference"];
        cfg.reference_mode = rf.at("mode").get<std::string>();
        if (cfg.reference_mode != "auto" && cfg.reference_mode != "analytic")
            throw ValidationError("reference.mode: unknown mode '" +
                                  cfg.reference_mode + "'");
        if (rf.contains("multiplier"))
            cfg.reference_multiplier = rf["multiplier"].get<int>();
    }
    if (doc.contains("timing"))
        cfg.timing = doc["timing"].get<bool>();
    if (doc.contains("out"))
        cfg.out_path = doc["out"].get<std::string>();
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

namespace {

const char* kSweepHeader =
    "preset,method,scheme,split,magnus,hermite_m,n_steps,t_final,"
    "n_fft_pairs,n_exponentials,l2_error_weighted,l2_error_unweighted,"
    "energy_error,norm_defect,wall_time_seconds";

std::string row_to_csv(const ResultRow& r) {
    std::ostringstream os;
    os << r.preset << ',' << r.method << ',' << r.scheme << ',' << r.split
       << ',' << r.magnus << ',' << r.hermite_m << ',' << r.n_steps << ','
       << fmt17(r.t_final) << ',' << r.n_fft_pairs << ',' << r.n_exponentials
       << ',' << fmt17(r.l2_error_weighted) << ','
       << fmt17(r.l2_error_unweighted) << ',' << fmt17(r.energy_error) << ','
       << fmt17(r.norm_defect) << ',' << fmt17(r.wall_time_seconds);
    return os.str();
}

struct Job {
    MethodSpec spec;
    MethodChoice choice;
    long long n_steps = 1;
    double t_final = 0.0;
};

RunOutput run_hermite_count(const ExperimentConfig& cfg) {
    RunOutput out;
    auto grid = make_grid(cfg.domain_a, cfg.domain_b, cfg.n);
    std::ostringstream csv;
    csv << "preset,delta,required_m,residual,tolerance,ceiling,"
           "evolution_error\n";
    for (double delta : cfg.hermite_deltas) {
        const WaveState u0 = displaced_gaussian_state(grid, delta);
        const BasisSizeResult r =
            required_basis_size(u0, cfg.hermite_tolerance);
        // One-shot evolution at the found M, checked against the closed
        // form for the linear unit trap.
        const HermiteBasis basis = hermite_functions(r.m, grid);
        const WaveState evolved = propagate_hermite(u0, basis, cfg.t_final);
        const WaveState exact =
            analytic_coherent_state(grid, delta, cfg.t_final);
        const double evo_err = error_l2(evolved, exact);
        csv << cfg.preset << ',' << fmt17(delta) << ',' << r.m << ','
            << fmt17(r.residual) << ',' << fmt17(cfg.hermite_tolerance) << ','
            << r.ceiling << ',' << fmt17(evo_err) << '\n';
        out.notes.push_back("delta=" + fmt17(delta) +
                            ": required_m=" + std::to_string(r.m) +
                            " residual=" + fmt17(r.residual));
    }
    out.csv = csv.str();
    return out;
}

} // namespace

RunOutput run_experiment(const ExperimentConfig& cfg) {
    if (cfg.kind == ExperimentKind::hermite_count)
        return run_hermite_count(cfg);

    if (cfg.methods.empty())
        throw ValidationError("methods: must be a nonempty array");

    const Problem p = problem_from_config(cfg);
    const WaveState u0 = initial_state_from_config(cfg);
    const double norm0 = norm_l2(u0);

    // Resolve method specs up front so validation errors surface before
    // any propagation starts.
    std::vector<MethodSpec> specs;
    for (std::size_t i = 0; i < cfg.methods.size(); ++i)
        specs.push_back(to_method_spec(cfg.methods[i],
                                       "methods[" + std::to_string(i) + "]"));

    std::vector<Job> jobs;
    if (cfg.kind == ExperimentKind::single_step_t) {
        if (cfg.sweep_t_finals.empty())
            throw ValidationError("sweep.t_final: empty");
        for (std::size_t mi = 0; mi < specs.size(); ++mi)
            for (double T : cfg.sweep_t_finals)
                jobs.push_back({specs[mi], cfg.methods[mi], 1, T});
    } else {
        for (std::size_t mi = 0; mi < specs.size(); ++mi) {
            std::vector<long long> steps = cfg.sweep_steps;
            for (long long budget : cfg.sweep_budgets) {
                const long long per = per_step_exponentials(specs[mi]);
                steps.push_back(std::max<long long>(1, budget / per));
            }
            if (steps.empty())
                throw ValidationError("sweep: empty step list");
            for (long long n : steps)
                jobs.push_back({specs[mi], cfg.methods[mi], n, cfg.t_final});
        }
    }

    // References shared across jobs: one per distinct final time.
    std::map<double, WaveState> references;
    if (cfg.reference_mode == "analytic") {
        if (!p.omega_sq.is_constant() || p.omega_sq(0.0) != 1.0 ||
            cfg.sigma != 0.0 || cfg.perturbation_family != "none" ||
            cfg.mu != 1.0)
            throw ValidationError(
                "reference.mode: analytic requires the linear unit trap");
        for (const Job& j : jobs)
            references.try_emplace(
                j.t_final, analytic_coherent_state(p.grid, cfg.initial_delta,
                                                   j.t_final));
    } else {
        long long finest = 1;
        for (const Job& j : jobs)
            finest = std::max(finest, j.n_steps);
        for (const Job& j : jobs)
            if (!references.count(j.t_final))
                references.emplace(
                    j.t_final,
                    reference_solution(p, u0, j.t_final, finest,
                                       cfg.reference_multiplier,
                                       cfg.reference_tol));
    }

    const double e0 = energy(u0, p, u0.time);

    std::vector<ResultRow> rows(jobs.size());
    run_jobs(jobs.size(), [&](std::size_t i) {
        const Job& job = jobs[i];
        const auto t_start = std::chrono::steady_clock::now();
        const PropagationResult res =
            propagate(u0, p, job.spec, job.t_final, job.n_steps);
        const auto t_stop = std::chrono::steady_clock::now();

        const WaveState& ref = references.at(job.t_final);
        ResultRow& r = rows[i];
        r.preset = cfg.preset;
        r.method = job.spec.id();
        r.scheme = job.spec.scheme.name;
        r.split = to_string(job.spec.split);
        r.magnus = to_string(job.spec.magnus);
        r.hermite_m = job.spec.hermite_m;
        r.n_steps = job.n_steps;
        r.t_final = job.t_final;
        r.n_fft_pairs = res.cost.n_fft_pairs;
        r.n_exponentials = res.cost.n_exponentials;
        r.l2_error_weighted = error_l2(res.state, ref, true);
        r.l2_error_unweighted = error_l2(res.state, ref, false);
        r.energy_error = std::abs(energy(res.state, p, job.t_final) - e0);
        r.norm_defect = std::abs(norm_l2(res.state) - norm0) / norm0;
        r.wall_time_seconds =
            cfg.timing ? std::chrono::duration<double>(t_stop - t_start).count()
                       : 0.0;
        // The FFT-based flows are unitary; a norm defect there means the
        // run is broken.  Hermite rows legitimately lose the projection
        // residual, which is part of what the sweeps measure.
        if (job.spec.split != SplitKind::ho_hermite &&
            !(r.norm_defect < 1e-10))
            throw NumericalError("norm defect " + fmt17(r.norm_defect) +
                                 " for method " + r.method);
    });

    std::stable_sort(rows.begin(), rows.end(),
                     [](const ResultRow& lhs, const ResultRow& rhs) {
                         if (lhs.method != rhs.method)
                             return lhs.method < rhs.method;
                         if (lhs.n_steps != rhs.n_steps)
                             return lhs.n_steps < rhs.n_steps;
                         return lhs.t_final < rhs.t_final;
                     });

    RunOutput out;
    out.rows = rows;
    std::ostringstream csv;
    csv << kSweepHeader << '\n';
    for (const ResultRow& r : rows)
        csv << row_to_csv(r) << '\n';
    out.csv = csv.str();
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot open output file '" + path + "'");
    out << text;
}

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("emit_plot: cannot open '" + path + "'");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ','))
            cells.push_back(tok);
        rows.push_back(std::move(cells));
    }
    if (rows.size() < 2)
        throw ValidationError("emit_plot: CSV has no data rows");
    return rows;
}

std::size_t column_of(const std::vector<std::string>& header,
                      const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw ValidationError("emit_plot: missing column '" + name + "'");
}

} // namespace

std::string emit_plot(const std::string& csv_path, const std::string& kind) {
    const auto rows = parse_csv(csv_path);
    const auto& header = rows.front();

    std::string xcol, ycol, xlabel;
    bool log_x = true;
    if (kind == "error_vs_cost") {
        xcol = "n_exponentials";
        ycol = "l2_error_weighted";
        xlabel = "number of exponentials";
    } else if (kind == "error_vs_T") {
        xcol = "t_final";
        ycol = "l2_error_weighted";
        xlabel = "T";
        log_x = false;
    } else if (kind == "order_fit") {
        xcol = "n_steps";
        ycol = "l2_error_weighted";
        xlabel = "step size h";
    } else {
        throw ValidationError("emit_plot: unknown kind '" + kind + "'");
    }
    const std::size_t cx = column_of(header, xcol);
    const std::size_t cy = column_of(header, ycol);
    const std::size_t cm = column_of(header, "method");
    const std::size_t ct = column_of(header, "t_final");

    // method -> (x, y) series, insertion-ordered
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const std::string& m = r[cm];
        if (!series.count(m))
            order.push_back(m);
        double x = std::stod(r[cx]);
        if (kind == "order_fit")
            x = std::stod(r[ct]) / x; // h = T / n_steps
        series[m].push_back({x, std::stod(r[cy])});
    }

    std::ostringstream os;
    os << "# generated from " << csv_path << "\n";
    os << "set terminal pngcairo size 960,680\n";
    os << "set output '" << kind << ".png'\n";
    os << "set xlabel '" << xlabel << "'\n";
    os << "set ylabel 'L2 error (weighted)'\n";
    os << (log_x ? "set logscale xy\n" : "set logscale y\n");
    os << "set format y '10^{%L}'\n";
    os << "set key outside right\n";
    int idx = 0;
    for (const std::string& m : order) {
        os << "$d" << idx << " << EOD\n";
        for (const auto& [x, y] : series[m])
            os << fmt17(x) << ' ' << fmt17(y) << '\n';
        os << "EOD\n";
        ++idx;
    }
    os << "plot ";
    idx = 0;
    for (const std::string& m : order) {
        if (idx > 0)
            os << ", \\\n     ";
        std::string title = m;
        if (kind == "order_fit") {
            std::vector<double> h, e;
            for (const auto& [x, y] : series[m]) {
                h.push_back(x);
                e.push_back(y);
            }
            const OrderFit fit = fit_order(h, e);
            char buf[64];
            std::snprintf(buf, sizeof(buf), " (slope %.2f)", fit.slope);
            title += buf;
        }
        os << "$d" << idx << " using 1:2 with linespoints title '" << title
           << "'";
        ++idx;
    }
    os << "\n";
    return os.str();
}

} // namespace hfsplit::experiments
