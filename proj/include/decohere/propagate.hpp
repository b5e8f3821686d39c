#pragma once

// Unitary evolution |psi(t + dt)> = exp(-i H dt) |psi(t)> by Chebyshev expansion.
//
// With H = center + half_width * X, the spectrum of X lies in [-1, 1] and
//   exp(-i H dt) = exp(-i center dt) * sum_n (2 - delta_n0) (-i)^n J_n(z) T_n(X),
//   z = half_width * dt.
// The sum is truncated where |J_n(z)| drops below the tolerance, which for
// n > z happens super-exponentially fast.

#include "decohere/hilbert.hpp"
#include "decohere/observe.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace decohere {

struct HamiltonianSpec;

struct SpectralBounds {
    double e_min = -1.0;
    double e_max = 1.0;
    double margin = 0.05;

    double center() const { return 0.5 * (e_max + e_min); }
    double half_width() const { return 0.5 * (e_max - e_min); }
    bool contains(double e) const { return e >= e_min && e <= e_max; }
};

enum class BoundsMethod : std::uint8_t {
    gershgorin, // symmetric [-r, r] from the operator's row-sum bound
    lanczos     // extremal Ritz values plus residuals, widened by the margin, clipped to gershgorin
};

/// Half width used for the zero operator, which propagates as the identity.
inline constexpr double kDegenerateHalfWidth = 1e-12;

/// Bessel tail cutoff. At 1e-14 the truncation leaves a systematic norm drift
/// of ~1e-15 per short step; one more term removes it.
inline constexpr double kDefaultChebyshevTolerance = 1e-15;

SpectralBounds estimate_bounds(const SpinOperator& op, BoundsMethod method = BoundsMethod::lanczos,
                               double margin = 0.05);
SpectralBounds estimate_bounds(const HamiltonianSpec& spec,
                               BoundsMethod method = BoundsMethod::lanczos, double margin = 0.05);

struct PropagatorPlan {
    SpectralBounds bounds;
    double dt = 0.0;       // total interval covered by one evolve_step
    int substeps = 1;      // dt is split into this many equal Chebyshev steps
    int order = 0;         // highest polynomial degree per substep
    double tolerance = kDefaultChebyshevTolerance;
    std::vector<cplx> coefficients; // order + 1 entries, phase exp(-i center dt/substeps) folded in
};

/// Chooses the order from the Bessel tail at tolerance, subdividing dt until the
/// order is at most max_order.
PropagatorPlan make_plan(const SpectralBounds& bounds, double dt, double tolerance = kDefaultChebyshevTolerance,
                         int max_order = 512);

/// Reusable propagator holding the recursion buffers for one operator.
class ChebyshevPropagator {
  public:
    ChebyshevPropagator(const SpinOperator& op, SpectralBounds bounds, double tolerance = kDefaultChebyshevTolerance,
                        int max_order = 512);

    /// state <- exp(-i H dt) state. Throws NumericError on non-finite amplitudes
    /// or a norm drift above 1e-8 (bounds that do not contain the spectrum).
    void step(StateVector& state, double dt);
    void step(StateVector& state, const PropagatorPlan& plan);

    const SpectralBounds& bounds() const { return bounds_; }
    std::uint64_t matvec_count() const { return matvecs_; }

  private:
    void chebyshev_substep(StateVector& state, const PropagatorPlan& plan);

    const SpinOperator* op_;
    SpectralBounds bounds_;
    double tolerance_;
    int max_order_;
    StateVector prev_;
    StateVector acc_;
    std::vector<cplx> block_;
    std::uint64_t matvecs_ = 0;
};

StateVector evolve_step(const PropagatorPlan& plan, const SpinOperator& op,
                        const StateVector& state);
StateVector evolve_step(const PropagatorPlan& plan, const HamiltonianSpec& spec,
                        const StateVector& state);

/// Called at every grid point with the current state (index into the grid).
using Observer = std::function<void(std::size_t index, double t, const StateVector& state)>;

struct Trajectory {
    std::vector<double> t;
    std::vector<double> energy; // <psi|H|psi> at each grid point
    StateVector final_state;
    std::uint64_t matvecs = 0;
};

struct TrajectoryOptions {
    double tolerance = kDefaultChebyshevTolerance;
    int max_order = 512;
    /// Consecutive grid points served by one Chebyshev recursion. Each point
    /// keeps its own accumulator, so memory grows by one state per point.
    int batch_samples = 32;
};

/// Evolves state0 across t_grid (strictly increasing, starting at 0).
///
/// Grid points are handled in batches: the vectors T_n(X) psi of one recursion
/// are shared by every point of the batch, each with its own Bessel weights.
/// Energies come from the Chebyshev moments mu_k = <psi|T_k(X)|psi>, collected
/// with two inner products per order, so no extra operator application is
/// needed per sample.
Trajectory evolve_trajectory(const SpinOperator& op, const SpectralBounds& bounds,
                             const StateVector& state0, std::span<const double> t_grid,
                             const Observer& observer, const TrajectoryOptions& options = {});

/// Free evolution of the central pair under H_c alone:
///   rho0(t) = sum_kl exp(-i (E_k - E_l) t) a_k conj(a_l) |k><l|
/// with a in the eigenbasis (T1, S, T0, T-1) and E = (-J/4, 3J/4, -J/4, -J/4).
DensityMatrix4 free_central_rho0(const std::array<cplx, 4>& a, double J, double t);

/// Evenly spaced grid of sample_count points on [0, t_max].
std::vector<double> uniform_grid(double t_max, int sample_count);

} // namespace decohere
