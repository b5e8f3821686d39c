#pragma once

// Experiment driver: flat key = value configs, seeded disorder realizations run
// on a worker pool, CSV time series and the canned per-figure parameter grids.
//
// Config keys (defaults in parentheses):
//   name (run)                  label used for output file names
//   n_bath (16)                 number of bath spins N
//   J (-5)                      central exchange
//   delta_kind (isotropic), delta_scale (-0.075)
//   omega_kind (heisenberg_like), omega_scale (0.15)
//       kinds: isotropic | heisenberg_like | random_isotropic
//   connectivity (ring)         none | ring | square | triangular | complete, or K
//   boundary (periodic)         periodic | open
//   central_state (up_down)     up_up | up_down | down_up | down_down | singlet | triplet_zero
//   bath_preparation (random)   random | ground_state
//   random_state (haar)         haar | random_phase
//   t_max (40), sample_count (2000)
//   realizations (1), seed_base (1)
//   echo_reference (analytic)   analytic | simulated
//   outputs (rho,entropy,echo,energy)  columns written besides t
//   write_realizations (true), write_average (true)
//   bounds (lanczos), tolerance (1e-15), batch_samples (32)
//   lanczos_tol (1e-10), lanczos_max_iterations (6000), lanczos_reorth (full), krylov_dim (60)
// '#' starts a comment; blank lines are ignored.

#include "decohere/groundstate.hpp"
#include "decohere/initstate.hpp"
#include "decohere/model.hpp"
#include "decohere/observe.hpp"
#include "decohere/propagate.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace decohere {

enum class BathPreparation : std::uint8_t { random, ground_state };
enum class EchoReference : std::uint8_t { analytic, simulated };

struct OutputSelection {
    bool rho = true;
    bool entropy = true;
    bool echo = true;
    bool energy = true;
};

struct ExperimentConfig {
    std::string name = "run";
    int n_bath = 16;
    double J = -5.0;
    CouplingKind delta_kind = CouplingKind::isotropic_fixed;
    double delta_scale = -0.075;
    CouplingKind omega_kind = CouplingKind::heisenberg_like;
    double omega_scale = 0.15;
    Connectivity connectivity = Connectivity::ring;
    Boundary boundary = Boundary::periodic;
    CentralState central_state = CentralState::up_down;
    BathPreparation bath_preparation = BathPreparation::random;
    RandomStateMode random_state = RandomStateMode::haar;
    double t_max = 40.0;
    int sample_count = 2000;
    int realizations = 1;
    std::uint64_t seed_base = 1;
    EchoReference echo_reference = EchoReference::analytic;
    OutputSelection outputs;
    bool write_realizations = true;
    bool write_average = true;
    BoundsMethod bounds = BoundsMethod::lanczos;
    double tolerance = kDefaultChebyshevTolerance;
    int batch_samples = 32;
    LanczosParams lanczos;
};

/// Throws ConfigError on unknown keys, malformed values or failed validation.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Every key, one per line, in the documented order; parse_config(format_config(c)) == c.
std::string format_config(const ExperimentConfig& config);
/// Throws ConfigError if a value is out of range or the topology cannot be built.
void validate(const ExperimentConfig& config);

struct RealizationSeeds {
    std::uint64_t central_bath = 0;
    std::uint64_t bath_bath = 0;
    std::uint64_t bath_state = 0;
    std::uint64_t lanczos_start = 0;
};

/// splitmix64 stream started at seed_base + realization * golden-ratio increment.
RealizationSeeds derive_seeds(std::uint64_t seed_base, int realization);

HamiltonianSpec realization_spec(const ExperimentConfig& config, const RealizationSeeds& seeds);

/// Bath state for one realization (random superposition or Lanczos ground state).
StateVector realization_bath_state(const ExperimentConfig& config, const HamiltonianSpec& spec,
                                   const RealizationSeeds& seeds);

struct RealizationSummary {
    int realization = 0;
    std::uint64_t seed = 0;
    double energy_drift = 0.0; // max |E(t) - E(0)| / max(|E(0)|, 1)
    double max_entropy = 0.0;
    double min_echo = 1.0;
    std::uint64_t matvecs = 0;
    double seconds = 0.0;
};

/// One disorder realization; the observer-side work (reduction, echo) is done here.
TimeSeries run_realization(const ExperimentConfig& config, int realization,
                           RealizationSummary* summary = nullptr);

/// Entrywise mean of rho and arithmetic mean of the scalar observables.
TimeSeries average_series(std::span<const TimeSeries> runs);

struct RunOptions {
    int threads = 1;
    std::filesystem::path out_dir; // empty: nothing is written
    std::function<void(const RealizationSummary&)> on_realization;
};

struct ExperimentResult {
    std::vector<TimeSeries> runs;
    TimeSeries average;
    std::vector<RealizationSummary> summaries;
    std::vector<std::filesystem::path> files;
};

/// Runs all realizations. Results (and files, written after all workers finish)
/// are identical for any thread count.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Columns of the CSV form of a series.
struct SeriesColumns {
    std::vector<double> t;
    std::vector<double> re_rho23;
    std::vector<double> abs_rho23;
    std::vector<double> rho11;
    std::vector<double> rho22;
    std::vector<double> rho33;
    std::vector<double> rho44;
    std::vector<double> entropy;
    std::vector<double> echo;
    std::vector<double> energy;
};

SeriesColumns to_columns(const TimeSeries& series);

/// Header t,re_rho23,abs_rho23,rho11,rho22,rho33,rho44,entropy,echo,energy
/// (restricted to the selected outputs), values as %.14e.
void write_csv(const TimeSeries& series, std::ostream& out, const OutputSelection& outputs = {});
void emit_csv(const TimeSeries& series, const std::filesystem::path& path,
              const OutputSelection& outputs = {});
/// Columns missing from the file are left empty. Throws ConfigError on malformed input.
SeriesColumns read_csv(std::istream& in);
SeriesColumns read_csv(const std::filesystem::path& path);

/// Default Omega grid of the Omega sweeps in fig2 .. fig4.
inline constexpr double kOmegaGrid[] = {0.05, 0.15, 0.5, 1.0};

/// Parameter grids for fig1 .. fig6 at bath size n_bath. Throws UsageError for
/// an unknown name or an empty Omega grid.
std::vector<ExperimentConfig> figure_suite(std::string_view name, int n_bath = 16,
                                           std::span<const double> omega_grid = kOmegaGrid);

} // namespace decohere
