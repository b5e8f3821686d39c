// Command-line driver: run configs, canned figure suites, envelope fits and the
// small-system oracle battery.
//
// Exit codes: 0 success, 1 configuration or usage error, 2 numeric failure.

#include "decohere/analysis.hpp"
#include "decohere/errors.hpp"
#include "decohere/experiment.hpp"
#include "decohere/oracle_battery.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

using namespace decohere;

namespace {

struct RunFlags {
    std::optional<std::uint64_t> seed;
    std::optional<int> realizations;
    std::string out_dir = "out";
    int threads = 1;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--seed", f.seed, "override seed_base");
    cmd->add_option("--realizations", f.realizations, "override the realization count")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out-dir", f.out_dir, "directory for CSV output")->capture_default_str();
    cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void apply_overrides(ExperimentConfig& c, const RunFlags& f) {
    if (f.seed) {
        c.seed_base = *f.seed;
    }
    if (f.realizations) {
        c.realizations = *f.realizations;
    }
    validate(c);
}

void run_one(const ExperimentConfig& c, const RunFlags& f) {
    RunOptions opt;
    opt.threads = f.threads;
    opt.out_dir = f.out_dir;
    opt.on_realization = [&](const RealizationSummary& s) {
        std::fprintf(stderr,
                     "%s r=%d seed=%llu drift=%.2e max_entropy=%.4f min_echo=%.4f matvecs=%llu "
                     "%.1fs\n",
                     c.name.c_str(), s.realization, static_cast<unsigned long long>(s.seed),
                     s.energy_drift, s.max_entropy, s.min_echo,
                     static_cast<unsigned long long>(s.matvecs), s.seconds);
    };
    const auto result = run_experiment(c, opt);
    for (const auto& path : result.files) {
        std::cout << path.string() << '\n';
    }
}

int fit_command(const std::string& csv, const std::string& model_name, const std::string& column,
                std::optional<double> t_start, std::optional<double> t_end, int n_bath, double J,
                double delta, bool c_free, std::optional<double> omega) {
    const auto cols = read_csv(std::filesystem::path(csv));
    const std::vector<double>* y = nullptr;
    if (column == "re_rho23") {
        y = &cols.re_rho23;
    } else if (column == "abs_rho23") {
        y = &cols.abs_rho23;
    } else if (column == "echo") {
        y = &cols.echo;
    } else {
        throw UsageError("--column must be re_rho23, abs_rho23 or echo");
    }
    if (y->size() != cols.t.size() || cols.t.empty()) {
        throw UsageError("column '" + column + "' is missing from " + csv);
    }
    const auto model = parse_decay_model(model_name);
    // abs_rho23 and echo carry no fast oscillation and are fitted as they are
    Envelope env;
    if (column == "re_rho23") {
        env = extract_envelope(cols.t, *y, omega);
    } else {
        env.t = cols.t;
        env.value = *y;
    }
    FitWindow window{cols.t.front(), cols.t.back()};
    if (model == DecayModel::exponential && !t_start && !t_end) {
        window = select_exponential_window(env.t, env.value);
    }
    window.t_start = t_start.value_or(window.t_start);
    window.t_end = t_end.value_or(window.t_end);
    const auto fit = model == DecayModel::exponential
                         ? fit_exponential(env.t, env.value, window)
                         : fit_gaussian(env.t, env.value, window, n_bath, J, delta, c_free);

    std::printf("model = %s\n", std::string(to_string(fit.model)).c_str());
    std::printf("column = %s\n", column.c_str());
    std::printf("window = %.6g %.6g\n", fit.window.t_start, fit.window.t_end);
    std::printf("points = %zu\n", fit.points);
    if (column == "re_rho23") {
        std::printf("peaks = %zu\n", env.peak_count);
        std::printf("undersampled = %s\n", env.undersampled ? "true" : "false");
    }
    if (fit.model == DecayModel::exponential) {
        std::printf("amplitude = %.10g\n", fit.amplitude);
        std::printf("rate = %.10g\n", fit.rate);
        std::printf("log_residual_rms = %.6g\n", fit.log_residual_rms);
    } else {
        std::printf("b = %.10g\n", fit.b);
        std::printf("c = %.10g\n", fit.c);
        std::printf("c_free = %s\n", fit.c_free ? "true" : "false");
        std::printf("omega = %.10g\n", fit.omega);
    }
    std::printf("residual_rms = %.6g\n", fit.residual_rms);
    return 0;
}

int oracle_command() {
    bool ok = true;
    for (const auto& check : run_oracle_battery()) {
        std::printf("%s %-24s error=%.3e tol=%.1e  %s\n", check.passed() ? "PASS" : "FAIL",
                    check.name.c_str(), check.error, check.tolerance, check.detail.c_str());
        ok = ok && check.passed();
    }
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decoherence of a central spin pair in an interacting spin bath"};
    app.require_subcommand(1);

    RunFlags flags;

    std::string config_path;
    auto* run = app.add_subcommand("run", "run one experiment config");
    run->add_option("config", config_path, "key = value config file")->required();
    add_run_flags(run, flags);

    std::string figure;
    int suite_n_bath = 16;
    std::vector<double> omega_grid;
    bool list_only = false;
    auto* suite = app.add_subcommand("suite", "run the canned configs of one figure");
    suite->add_option("figure", figure, "fig1 .. fig6")->required();
    suite->add_option("--n-bath", suite_n_bath, "bath size")->capture_default_str();
    suite->add_option("--omega-grid", omega_grid, "Omega values for the fig2 .. fig4 sweeps");
    suite->add_flag("--list", list_only, "print the configs instead of running them");
    add_run_flags(suite, flags);

    std::string csv;
    std::string model = "exp";
    std::string column = "re_rho23";
    std::optional<double> t_start;
    std::optional<double> t_end;
    std::optional<double> omega;
    int fit_n_bath = 16;
    double fit_J = -5.0;
    double fit_delta = -0.075;
    bool c_free = false;
    auto* fit = app.add_subcommand("fit", "fit a decay law to a CSV column (re_rho23 via its peak envelope)");
    fit->add_option("csv", csv, "time series CSV")->required();
    fit->add_option("--model", model, "exp or gauss")
        ->check(CLI::IsMember({"exp", "gauss"}))
        ->capture_default_str();
    fit->add_option("--column", column, "re_rho23, abs_rho23 or echo")->capture_default_str();
    fit->add_option("--t-start", t_start, "fit window start (default: automatic)");
    fit->add_option("--t-end", t_end, "fit window end (default: automatic)");
    fit->add_option("--omega", omega, "oscillation frequency for the sampling check");
    fit->add_option("--n-bath", fit_n_bath, "gauss: bath size")->capture_default_str();
    fit->add_option("--J", fit_J, "gauss: central exchange")->capture_default_str();
    fit->add_option("--delta", fit_delta, "gauss: central-bath coupling")->capture_default_str();
    fit->add_flag("--c-free", c_free, "gauss: fit the Gaussian rate independently");

    auto* oracle = app.add_subcommand("oracle-check", "run the small-system oracle battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*run) {
            auto c = load_config(config_path);
            apply_overrides(c, flags);
            run_one(c, flags);
        } else if (*suite) {
            auto configs = omega_grid.empty() ? figure_suite(figure, suite_n_bath)
                                              : figure_suite(figure, suite_n_bath, omega_grid);
            for (auto& c : configs) {
                apply_overrides(c, flags);
                if (list_only) {
                    std::cout << format_config(c) << '\n';
                } else {
                    run_one(c, flags);
                }
            }
        } else if (*fit) {
            return fit_command(csv, model, column, t_start, t_end, fit_n_bath, fit_J, fit_delta,
                               c_free, omega);
        } else if (*oracle) {
            return oracle_command();
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
