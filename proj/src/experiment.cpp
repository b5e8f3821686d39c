#include "decohere/experiment.hpp"

#include "decohere/errors.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace decohere {
namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("bad value for '" + std::string(key) + "': '" + std::string(text) + "'");
    }
    return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ConfigError("bad boolean for '" + std::string(key) + "': '" + std::string(text) + "'");
}

OutputSelection parse_outputs(std::string_view text) {
    OutputSelection o{false, false, false, false};
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        if (item == "rho") {
            o.rho = true;
        } else if (item == "entropy") {
            o.entropy = true;
        } else if (item == "echo") {
            o.echo = true;
        } else if (item == "energy") {
            o.energy = true;
        } else if (!item.empty()) {
            throw ConfigError("unknown output '" + std::string(item) + "'");
        }
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return o;
}

std::string format_outputs(const OutputSelection& o) {
    std::string s;
    auto add = [&](bool on, const char* name) {
        if (on) {
            s += s.empty() ? "" : ",";
            s += name;
        }
    };
    add(o.rho, "rho");
    add(o.entropy, "entropy");
    add(o.echo, "echo");
    add(o.energy, "energy");
    return s;
}

// shortest text that parses back to the same double
std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

} // namespace

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig c;
    std::map<std::string, std::string, std::less<>> kv;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (!kv.emplace(key, value).second) {
            throw ConfigError("duplicate key '" + key + "'");
        }
    }

    std::string connectivity_text = "ring";
    for (const auto& [key, value] : kv) {
        if (key == "name") {
            c.name = value;
        } else if (key == "n_bath") {
            c.n_bath = parse_number<int>(key, value);
        } else if (key == "J") {
            c.J = parse_number<double>(key, value);
        } else if (key == "delta_kind") {
            c.delta_kind = parse_coupling_kind(value);
        } else if (key == "delta_scale") {
            c.delta_scale = parse_number<double>(key, value);
        } else if (key == "omega_kind") {
            c.omega_kind = parse_coupling_kind(value);
        } else if (key == "omega_scale") {
            c.omega_scale = parse_number<double>(key, value);
        } else if (key == "connectivity") {
            connectivity_text = value;
        } else if (key == "boundary") {
            if (value == "periodic") {
                c.boundary = Boundary::periodic;
            } else if (value == "open") {
                c.boundary = Boundary::open;
            } else {
                throw ConfigError("boundary must be periodic or open");
            }
        } else if (key == "central_state") {
            c.central_state = parse_central_state(value);
        } else if (key == "bath_preparation") {
            if (value == "random") {
                c.bath_preparation = BathPreparation::random;
            } else if (value == "ground_state") {
                c.bath_preparation = BathPreparation::ground_state;
            } else {
                throw ConfigError("bath_preparation must be random or ground_state");
            }
        } else if (key == "random_state") {
            if (value == "haar") {
                c.random_state = RandomStateMode::haar;
            } else if (value == "random_phase") {
                c.random_state = RandomStateMode::random_phase;
            } else {
                throw ConfigError("random_state must be haar or random_phase");
            }
        } else if (key == "t_max") {
            c.t_max = parse_number<double>(key, value);
        } else if (key == "sample_count") {
            c.sample_count = parse_number<int>(key, value);
        } else if (key == "realizations") {
            c.realizations = parse_number<int>(key, value);
        } else if (key == "seed_base") {
            c.seed_base = parse_number<std::uint64_t>(key, value);
        } else if (key == "echo_reference") {
            if (value == "analytic") {
                c.echo_reference = EchoReference::analytic;
            } else if (value == "simulated") {
                c.echo_reference = EchoReference::simulated;
            } else {
                throw ConfigError("echo_reference must be analytic or simulated");
            }
        } else if (key == "outputs") {
            c.outputs = parse_outputs(value);
        } else if (key == "write_realizations") {
            c.write_realizations = parse_bool(key, value);
        } else if (key == "write_average") {
            c.write_average = parse_bool(key, value);
        } else if (key == "bounds") {
            if (value == "lanczos") {
                c.bounds = BoundsMethod::lanczos;
            } else if (value == "gershgorin") {
                c.bounds = BoundsMethod::gershgorin;
            } else {
                throw ConfigError("bounds must be lanczos or gershgorin");
            }
        } else if (key == "tolerance") {
            c.tolerance = parse_number<double>(key, value);
        } else if (key == "batch_samples") {
            c.batch_samples = parse_number<int>(key, value);
        } else if (key == "lanczos_tol") {
            c.lanczos.residual_tol = parse_number<double>(key, value);
        } else if (key == "lanczos_max_iterations") {
            c.lanczos.max_iterations = parse_number<int>(key, value);
        } else if (key == "lanczos_reorth") {
            if (value == "full") {
                c.lanczos.reorthogonalization = Reorthogonalization::full;
            } else if (value == "selective") {
                c.lanczos.reorthogonalization = Reorthogonalization::selective;
            } else {
                throw ConfigError("lanczos_reorth must be full or selective");
            }
        } else if (key == "krylov_dim") {
            c.lanczos.krylov_dim = parse_number<int>(key, value);
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }
    if (c.n_bath < 1) {
        throw ConfigError("n_bath must be >= 1");
    }
    c.connectivity = parse_connectivity(connectivity_text, c.n_bath);
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "name = " << c.name << '\n'
        << "n_bath = " << c.n_bath << '\n'
        << "J = " << fmt_double(c.J) << '\n'
        << "delta_kind = " << to_string(c.delta_kind) << '\n'
        << "delta_scale = " << fmt_double(c.delta_scale) << '\n'
        << "omega_kind = " << to_string(c.omega_kind) << '\n'
        << "omega_scale = " << fmt_double(c.omega_scale) << '\n'
        << "connectivity = " << to_string(c.connectivity) << '\n'
        << "boundary = " << (c.boundary == Boundary::periodic ? "periodic" : "open") << '\n'
        << "central_state = " << to_string(c.central_state) << '\n'
        << "bath_preparation = "
        << (c.bath_preparation == BathPreparation::random ? "random" : "ground_state") << '\n'
        << "random_state = " << (c.random_state == RandomStateMode::haar ? "haar" : "random_phase")
        << '\n'
        << "t_max = " << fmt_double(c.t_max) << '\n'
        << "sample_count = " << c.sample_count << '\n'
        << "realizations = " << c.realizations << '\n'
        << "seed_base = " << c.seed_base << '\n'
        << "echo_reference = "
        << (c.echo_reference == EchoReference::analytic ? "analytic" : "simulated") << '\n'
        << "outputs = " << format_outputs(c.outputs) << '\n'
        << "write_realizations = " << (c.write_realizations ? "true" : "false") << '\n'
        << "write_average = " << (c.write_average ? "true" : "false") << '\n'
        << "bounds = " << (c.bounds == BoundsMethod::lanczos ? "lanczos" : "gershgorin") << '\n'
        << "tolerance = " << fmt_double(c.tolerance) << '\n'
        << "batch_samples = " << c.batch_samples << '\n'
        << "lanczos_tol = " << fmt_double(c.lanczos.residual_tol) << '\n'
        << "lanczos_max_iterations = " << c.lanczos.max_iterations << '\n'
        << "lanczos_reorth = "
        << (c.lanczos.reorthogonalization == Reorthogonalization::full ? "full" : "selective")
        << '\n'
        << "krylov_dim = " << c.lanczos.krylov_dim << '\n';
    return out.str();
}

void validate(const ExperimentConfig& c) {
    if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos) {
        throw ConfigError("name must be non-empty and contain no path separators");
    }
    if (c.n_bath < 1 || c.n_bath > 26) {
        throw ConfigError("n_bath must be in [1, 26]");
    }
    if (!std::isfinite(c.J) || !std::isfinite(c.delta_scale) || !std::isfinite(c.omega_scale)) {
        throw ConfigError("J, delta_scale and omega_scale must be finite");
    }
    if ((c.delta_kind != CouplingKind::isotropic_fixed && c.delta_scale < 0.0) ||
        (c.omega_kind != CouplingKind::isotropic_fixed && c.omega_scale < 0.0)) {
        throw ConfigError("random coupling scales must be >= 0");
    }
    if (!(c.t_max > 0.0) || !std::isfinite(c.t_max)) {
        throw ConfigError("t_max must be finite and > 0");
    }
    if (c.sample_count < 2) {
        throw ConfigError("sample_count must be >= 2");
    }
    if (c.realizations < 1) {
        throw ConfigError("realizations must be >= 1");
    }
    if (!(c.tolerance > 0.0) || c.tolerance > 1e-12) {
        throw ConfigError("tolerance must be in (0, 1e-12]");
    }
    if (c.batch_samples < 1) {
        throw ConfigError("batch_samples must be >= 1");
    }
    if (!(c.lanczos.residual_tol > 0.0) || c.lanczos.max_iterations < 2 ||
        c.lanczos.krylov_dim < 2) {
        throw ConfigError("lanczos_tol must be > 0, lanczos_max_iterations and krylov_dim >= 2");
    }
    build_topology(c.connectivity, c.n_bath, c.boundary);
}

RealizationSeeds derive_seeds(std::uint64_t seed_base, int realization) {
    // each realization owns four consecutive draws of one splitmix64 stream
    std::uint64_t x = seed_base + 4ULL * static_cast<std::uint64_t>(realization) *
                                      0x9e3779b97f4a7c15ULL;
    RealizationSeeds s;
    s.central_bath = splitmix64(x);
    s.bath_bath = splitmix64(x);
    s.bath_state = splitmix64(x);
    s.lanczos_start = splitmix64(x);
    return s;
}

HamiltonianSpec realization_spec(const ExperimentConfig& c, const RealizationSeeds& seeds) {
    const auto topo = build_topology(c.connectivity, c.n_bath, c.boundary);
    auto central =
        sample_couplings(c.delta_kind, c.delta_scale, central_bath_pairs(c.n_bath), seeds.central_bath);
    auto bath = sample_couplings(c.omega_kind, c.omega_scale, bath_pairs(topo), seeds.bath_bath);
    return build_spec(c.J, topo, std::move(central), std::move(bath));
}

StateVector realization_bath_state(const ExperimentConfig& c, const HamiltonianSpec& spec,
                                   const RealizationSeeds& seeds) {
    if (c.bath_preparation == BathPreparation::random) {
        return random_bath_state(c.n_bath, seeds.bath_state, c.random_state);
    }
    LanczosParams p = c.lanczos;
    p.start_seed = seeds.lanczos_start;
    return bath_ground_state(spec, p).state;
}

TimeSeries run_realization(const ExperimentConfig& c, int realization,
                           RealizationSummary* summary) {
    const auto start = std::chrono::steady_clock::now();
    const auto seeds = derive_seeds(c.seed_base, realization);
    const auto spec = realization_spec(c, seeds);
    const auto psi0 = compose_initial(c.central_state, realization_bath_state(c, spec, seeds));
    const auto grid = uniform_grid(c.t_max, c.sample_count);
    const auto a = to_eigenbasis(central_product_amplitudes(c.central_state));

    TrajectoryOptions opts;
    opts.tolerance = c.tolerance;
    opts.batch_samples = c.batch_samples;

    std::uint64_t matvecs = 0;
    std::vector<DensityMatrix4> reference;
    if (c.outputs.echo && c.echo_reference == EchoReference::simulated) {
        const auto free_spec = spec.with_flags({true, false, true});
        const auto free_op = make_operator(free_spec);
        reference.reserve(grid.size());
        const auto traj = evolve_trajectory(
            free_op, estimate_bounds(free_op, c.bounds), psi0, grid,
            [&](std::size_t, double, const StateVector& s) { reference.push_back(reduce(s)); },
            opts);
        matvecs += traj.matvecs;
    }

    TimeSeries series;
    series.realization = realization;
    series.realization_seed = seeds.bath_state;
    series.records.resize(grid.size());
    const auto op = make_operator(spec);
    const auto traj = evolve_trajectory(
        op, estimate_bounds(op, c.bounds), psi0, grid,
        [&](std::size_t i, double t, const StateVector& s) {
            SeriesRecord& r = series.records[i];
            r.t = t;
            r.rho = reduce(s);
            r.entropy = quadratic_entropy(r.rho);
            if (c.outputs.echo) {
                r.echo = loschmidt_echo(r.rho, reference.empty() ? free_central_rho0(a, c.J, t)
                                                                 : reference[i]);
            }
        },
        opts);
    matvecs += traj.matvecs;

    const double e0 = traj.energy.front();
    double drift = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        series.records[i].energy = traj.energy[i];
        drift = std::max(drift, std::abs(traj.energy[i] - e0));
    }
    if (summary) {
        summary->realization = realization;
        summary->seed = seeds.bath_state;
        summary->energy_drift = drift / std::max(std::abs(e0), 1.0);
        summary->max_entropy = 0.0;
        summary->min_echo = 1.0;
        for (const auto& r : series.records) {
            summary->max_entropy = std::max(summary->max_entropy, r.entropy);
            summary->min_echo = std::min(summary->min_echo, r.echo);
        }
        summary->matvecs = matvecs;
        summary->seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return series;
}

TimeSeries average_series(std::span<const TimeSeries> runs) {
    if (runs.empty()) {
        throw UsageError("average_series: no runs");
    }
    TimeSeries avg;
    avg.realization = -1;
    avg.records = runs.front().records;
    const double w = 1.0 / static_cast<double>(runs.size());
    for (std::size_t i = 0; i < avg.records.size(); ++i) {
        SeriesRecord& r = avg.records[i];
        r.rho = DensityMatrix4{};
        r.entropy = r.echo = r.energy = 0.0;
        for (const auto& run : runs) {
            if (run.records.size() != avg.records.size() || run.records[i].t != r.t) {
                throw UsageError("average_series: runs have different time grids");
            }
            const SeriesRecord& x = run.records[i];
            for (int k = 0; k < 4; ++k) {
                for (int l = 0; l < 4; ++l) {
                    r.rho(k, l) += w * x.rho(k, l);
                }
            }
            r.entropy += w * x.entropy;
            r.echo += w * x.echo;
            r.energy += w * x.energy;
        }
    }
    return avg;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    validate(config);
    const int n = config.realizations;
    ExperimentResult result;
    result.runs.resize(static_cast<std::size_t>(n));
    result.summaries.resize(static_cast<std::size_t>(n));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
    std::atomic<int> next{0};
    std::mutex report;

    auto worker = [&] {
        for (int r = next++; r < n; r = next++) {
            const auto i = static_cast<std::size_t>(r);
            try {
                result.runs[i] = run_realization(config, r, &result.summaries[i]);
                if (options.on_realization) {
                    const std::lock_guard lock(report);
                    options.on_realization(result.summaries[i]);
                }
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int threads = std::clamp(options.threads, 1, n);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < threads; ++k) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    result.average = average_series(result.runs);

    if (!options.out_dir.empty()) {
        std::filesystem::create_directories(options.out_dir);
        auto write = [&](const TimeSeries& s, const std::string& suffix) {
            const auto path = options.out_dir / (config.name + suffix);
            emit_csv(s, path, config.outputs);
            result.files.push_back(path);
        };
        if (config.write_realizations) {
            for (int r = 0; r < n; ++r) {
                char suffix[32];
                std::snprintf(suffix, sizeof suffix, "_r%03d.csv", r);
                write(result.runs[static_cast<std::size_t>(r)], suffix);
            }
        }
        if (config.write_average) {
            write(result.average, "_avg.csv");
        }
        const auto cfg_path = options.out_dir / (config.name + "_config.txt");
        std::ofstream(cfg_path) << format_config(config);
        result.files.push_back(cfg_path);
    }
    return result;
}

SeriesColumns to_columns(const TimeSeries& series) {
    SeriesColumns c;
    for (const auto& r : series.records) {
        c.t.push_back(r.t);
        c.re_rho23.push_back(r.rho(1, 2).real());
        c.abs_rho23.push_back(std::abs(r.rho(1, 2)));
        c.rho11.push_back(r.rho(0, 0).real());
        c.rho22.push_back(r.rho(1, 1).real());
        c.rho33.push_back(r.rho(2, 2).real());
        c.rho44.push_back(r.rho(3, 3).real());
        c.entropy.push_back(r.entropy);
        c.echo.push_back(r.echo);
        c.energy.push_back(r.energy);
    }
    return c;
}

namespace {

struct Column {
    const char* name;
    std::vector<double> SeriesColumns::*member;
    bool OutputSelection::*flag;
};

const Column kColumns[] = {
    {"t", &SeriesColumns::t, nullptr},
    {"re_rho23", &SeriesColumns::re_rho23, &OutputSelection::rho},
    {"abs_rho23", &SeriesColumns::abs_rho23, &OutputSelection::rho},
    {"rho11", &SeriesColumns::rho11, &OutputSelection::rho},
    {"rho22", &SeriesColumns::rho22, &OutputSelection::rho},
    {"rho33", &SeriesColumns::rho33, &OutputSelection::rho},
    {"rho44", &SeriesColumns::rho44, &OutputSelection::rho},
    {"entropy", &SeriesColumns::entropy, &OutputSelection::entropy},
    {"echo", &SeriesColumns::echo, &OutputSelection::echo},
    {"energy", &SeriesColumns::energy, &OutputSelection::energy},
};

} // namespace

void write_csv(const TimeSeries& series, std::ostream& out, const OutputSelection& outputs) {
    const auto cols = to_columns(series);
    std::vector<const std::vector<double>*> selected;
    std::string header;
    for (const auto& col : kColumns) {
        if (col.flag == nullptr || outputs.*(col.flag)) {
            header += header.empty() ? "" : ",";
            header += col.name;
            selected.push_back(&(cols.*(col.member)));
        }
    }
    out << header << '\n';
    char buf[32];
    for (std::size_t i = 0; i < cols.t.size(); ++i) {
        for (std::size_t k = 0; k < selected.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.14e", (*selected[k])[i]);
            out << (k ? "," : "") << buf;
        }
        out << '\n';
    }
}

void emit_csv(const TimeSeries& series, const std::filesystem::path& path,
              const OutputSelection& outputs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    write_csv(series, out, outputs);
    if (!out) {
        throw std::runtime_error("write failed for '" + path.string() + "'");
    }
}

SeriesColumns read_csv(std::istream& in) {
    SeriesColumns cols;
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError("CSV is empty");
    }
    std::vector<std::vector<double>*> targets;
    std::string_view rest = trim(line);
    while (true) {
        const auto comma = rest.find(',');
        const auto name = trim(rest.substr(0, comma));
        std::vector<double>* target = nullptr;
        for (const auto& col : kColumns) {
            if (name == col.name) {
                target = &(cols.*(col.member));
            }
        }
        if (target == nullptr) {
            throw ConfigError("unknown CSV column '" + std::string(name) + "'");
        }
        targets.push_back(target);
        if (comma == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(comma + 1);
    }
    if (targets.front() != &cols.t) {
        throw ConfigError("CSV must start with the t column");
    }
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        std::string_view v = trim(line);
        if (v.empty()) {
            continue;
        }
        for (std::size_t k = 0; k < targets.size(); ++k) {
            const auto comma = v.find(',');
            if ((comma == std::string_view::npos) != (k + 1 == targets.size())) {
                throw ConfigError("CSV row " + std::to_string(row) + " has the wrong field count");
            }
            targets[k]->push_back(parse_number<double>("csv", trim(v.substr(0, comma))));
            if (comma != std::string_view::npos) {
                v.remove_prefix(comma + 1);
            }
        }
    }
    return cols;
}

SeriesColumns read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open '" + path.string() + "'");
    }
    return read_csv(in);
}

std::vector<ExperimentConfig> figure_suite(std::string_view name, int n_bath,
                                           std::span<const double> omega_grid) {
    if (omega_grid.empty()) {
        throw UsageError("figure_suite: empty Omega grid");
    }
    ExperimentConfig base;
    base.n_bath = n_bath;
    base.J = -5.0;
    base.delta_kind = CouplingKind::isotropic_fixed;
    base.delta_scale = -0.075;
    base.omega_kind = CouplingKind::heisenberg_like;
    base.omega_scale = 0.15;
    const Connectivity k_all[] = {Connectivity::ring, Connectivity::square,
                                  Connectivity::triangular, Connectivity::complete};
    auto k_label = [&](Connectivity c) { return "K" + std::to_string(degree(c, n_bath)); };

    std::vector<ExperimentConfig> out;
    if (name == "fig1") {
        const char panel[] = "abcde";
        const Connectivity ks[] = {Connectivity::none, Connectivity::ring, Connectivity::square,
                                   Connectivity::triangular, Connectivity::complete};
        for (int i = 0; i < 5; ++i) {
            ExperimentConfig c = base;
            c.connectivity = ks[i];
            c.name = std::string("fig1") + panel[i];
            out.push_back(c);
        }
    } else if (name == "fig2" || name == "fig3") {
        for (Connectivity k : {Connectivity::ring, Connectivity::complete}) {
            for (double omega : omega_grid) {
                ExperimentConfig c = base;
                if (name == "fig3") {
                    c.delta_kind = CouplingKind::heisenberg_like;
                    c.delta_scale = 0.15;
                }
                c.connectivity = k;
                c.omega_scale = omega;
                c.name = std::string(name) + "_" + k_label(k) + "_omega" + short_number(omega);
                out.push_back(c);
            }
        }
    } else if (name == "fig4") {
        for (bool iso : {true, false}) {
            for (double omega : omega_grid) {
                ExperimentConfig c = base;
                c.connectivity = Connectivity::ring;
                if (!iso) {
                    c.delta_kind = CouplingKind::heisenberg_like;
                    c.delta_scale = 0.15;
                }
                c.omega_scale = omega;
                c.name = std::string("fig4_") + (iso ? "iso" : "aniso") + "_omega" +
                         short_number(omega);
                out.push_back(c);
            }
        }
    } else if (name == "fig5" || name == "fig6") {
        const double root = std::sqrt(static_cast<double>(n_bath - 1));
        const std::vector<double> products =
            name == "fig5" ? std::vector<double>{0.1, 0.15, 0.25, 1.0} : std::vector<double>{0.15};
        const char panel[] = "abcd";
        for (std::size_t p = 0; p < products.size(); ++p) {
            for (Connectivity k : k_all) {
                ExperimentConfig c = base;
                c.connectivity = k;
                c.omega_scale = products[p] * root / std::sqrt(static_cast<double>(degree(k, n_bath)));
                if (name == "fig6") {
                    c.bath_preparation = BathPreparation::ground_state;
                    c.name = "fig6_" + k_label(k);
                } else {
                    c.name = std::string("fig5") + panel[p] + "_" + k_label(k);
                }
                out.push_back(c);
            }
        }
    } else {
        throw UsageError("unknown figure '" + std::string(name) + "' (expected fig1 .. fig6)");
    }
    return out;
}

} // namespace decohere
