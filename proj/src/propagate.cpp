#include "decohere/propagate.hpp"

#include "decohere/errors.hpp"
#include "decohere/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace decohere {
namespace {

constexpr int kBoundsLanczosSteps = 60;

SpectralBounds gershgorin_bounds(const SpinOperator& op) {
    const double r = op.norm_bound();
    if (op.is_zero() || r == 0.0) {
        return {-kDegenerateHalfWidth, kDegenerateHalfWidth, 0.0};
    }
    return {-r, r, 0.0};
}

// Plain Lanczos without reorthogonalization; only the extremal Ritz values and
// their residuals are used, and those are insensitive to ghost copies.
SpectralBounds lanczos_bounds(const SpinOperator& op, double margin) {
    const SpectralBounds outer = gershgorin_bounds(op);
    if (outer.half_width() <= kDegenerateHalfWidth) {
        return outer;
    }
    const auto& k = kernels::active();
    const std::size_t dim = op.dim();
    const int steps = static_cast<int>(std::min<std::size_t>(kBoundsLanczosSteps, dim));

    StateVector v(op.n_spins());
    StateVector v_prev(op.n_spins());
    StateVector w(op.n_spins());
    std::mt19937_64 rng(0x5eedULL);
    std::normal_distribution<double> g;
    for (auto& a : v.amplitudes()) {
        a = g(rng);
    }
    v.normalize();

    std::vector<double> alpha;
    std::vector<double> beta;
    double beta_last = 0.0;
    for (int j = 0; j < steps; ++j) {
        op.apply(v, w);
        const double a = k.dot(v.data(), w.data(), dim).real();
        alpha.push_back(a);
        k.axpy(cplx{-a, 0.0}, v.data(), w.data(), dim);
        if (j > 0) {
            k.axpy(cplx{-beta.back(), 0.0}, v_prev.data(), w.data(), dim);
        }
        const double b = std::sqrt(k.norm_sq(w.data(), dim));
        beta_last = b;
        if (b <= 1e-12 * outer.half_width() || j + 1 == steps) {
            break;
        }
        beta.push_back(b);
        std::swap(v_prev, v);
        std::swap(v, w);
        k.scale(cplx{1.0 / b, 0.0}, v.data(), dim);
    }

    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub(std::max<Eigen::Index>(m - 1, 0));
    for (Eigen::Index i = 0; i + 1 < m; ++i) {
        sub(i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const auto& theta = es.eigenvalues();
    const auto& s = es.eigenvectors();
    const double r_min = std::abs(beta_last * s(m - 1, 0));
    const double r_max = std::abs(beta_last * s(m - 1, m - 1));

    double lo = theta(0) - r_min;
    double hi = theta(m - 1) + r_max;
    const double pad = margin * std::max(0.5 * (hi - lo), kDegenerateHalfWidth);
    lo = std::max(lo - pad, outer.e_min);
    hi = std::min(hi + pad, outer.e_max);
    return {lo, hi, margin};
}

// Returns limit + 1 as soon as the order is known to exceed limit; the Bessel
// functions of libstdc++ lose accuracy for arguments in the thousands, so they
// are never evaluated there.
int required_order(double z, double tolerance, int limit) {
    if (z > limit) {
        return limit + 1;
    }
    int n = static_cast<int>(std::ceil(z));
    while (n <= limit) {
        const double j1 = std::abs(std::cyl_bessel_j(static_cast<double>(n + 1), z));
        const double j2 = std::abs(std::cyl_bessel_j(static_cast<double>(n + 2), z));
        if (!std::isfinite(j1) || !std::isfinite(j2)) {
            throw NumericError("Bessel function evaluation failed");
        }
        // Smallest n past the turning point where the next two tail terms are
        // both below tolerance; the tail beyond decays faster than geometrically.
        if (2.0 * j1 < tolerance && 2.0 * j2 < tolerance) {
            return std::max(n, 1);
        }
        ++n;
    }
    return limit + 1;
}

} // namespace

SpectralBounds estimate_bounds(const SpinOperator& op, BoundsMethod method, double margin) {
    if (margin < 0.0) {
        throw UsageError("estimate_bounds: margin must be >= 0");
    }
    if (method == BoundsMethod::gershgorin) {
        auto b = gershgorin_bounds(op);
        b.margin = margin;
        return b;
    }
    return lanczos_bounds(op, margin);
}

SpectralBounds estimate_bounds(const HamiltonianSpec& spec, BoundsMethod method, double margin) {
    return estimate_bounds(make_operator(spec), method, margin);
}

PropagatorPlan make_plan(const SpectralBounds& bounds, double dt, double tolerance,
                         int max_order) {
    if (!(bounds.e_max > bounds.e_min)) {
        throw UsageError("make_plan: bounds must satisfy e_min < e_max");
    }
    if (!(dt >= 0.0) || !std::isfinite(dt)) {
        throw UsageError("make_plan: dt must be finite and >= 0");
    }
    if (!(tolerance > 0.0) || max_order < 2) {
        throw UsageError("make_plan: tolerance must be > 0 and max_order >= 2");
    }
    PropagatorPlan plan;
    plan.bounds = bounds;
    plan.dt = dt;
    plan.tolerance = tolerance;
    if (dt == 0.0) {
        plan.substeps = 1;
        plan.order = 0;
        plan.coefficients = {cplx{1.0, 0.0}};
        return plan;
    }
    const double h = bounds.half_width();
    int substeps = std::max(1, static_cast<int>(std::ceil(h * dt / max_order)));
    int order = required_order(h * dt / substeps, tolerance, max_order);
    while (order > max_order) {
        substeps = static_cast<int>(std::ceil(substeps * 1.25 + 1));
        order = required_order(h * dt / substeps, tolerance, max_order);
    }
    plan.substeps = substeps;
    plan.order = order;

    const double tau = dt / substeps;
    const double z = h * tau;
    const cplx phase = std::exp(cplx{0.0, -bounds.center() * tau});
    plan.coefficients.resize(static_cast<std::size_t>(order) + 1);
    cplx minus_i_pow{1.0, 0.0};
    for (int n = 0; n <= order; ++n) {
        const double jn = std::cyl_bessel_j(static_cast<double>(n), z);
        const double weight = n == 0 ? 1.0 : 2.0;
        plan.coefficients[static_cast<std::size_t>(n)] = phase * minus_i_pow * (weight * jn);
        minus_i_pow *= cplx{0.0, -1.0};
    }
    return plan;
}

ChebyshevPropagator::ChebyshevPropagator(const SpinOperator& op, SpectralBounds bounds,
                                         double tolerance, int max_order)
    : op_(&op), bounds_(bounds), tolerance_(tolerance), max_order_(max_order),
      prev_(op.n_spins()), acc_(op.n_spins()), block_(SpinOperator::kBlock) {
    if (!(bounds.e_max > bounds.e_min)) {
        throw UsageError("ChebyshevPropagator: bounds must satisfy e_min < e_max");
    }
}

void ChebyshevPropagator::step(StateVector& state, double dt) {
    step(state, make_plan(bounds_, dt, tolerance_, max_order_));
}

void ChebyshevPropagator::step(StateVector& state, const PropagatorPlan& plan) {
    if (state.dim() != op_->dim()) {
        throw UsageError("ChebyshevPropagator::step: dimension mismatch");
    }
    if (plan.dt == 0.0) {
        return;
    }
    if (op_->is_zero()) {
        return;
    }
    const double n0 = state.norm();
    for (int s = 0; s < plan.substeps; ++s) {
        chebyshev_substep(state, plan);
    }
    const double n = state.norm();
    if (!std::isfinite(n) || !state.all_finite()) {
        throw NumericError("Chebyshev step produced non-finite amplitudes");
    }
    if (std::abs(n - n0) > 1e-8 * n0) {
        throw NumericError("Chebyshev step changed the norm; spectral bounds do not contain "
                           "the spectrum");
    }
}

void ChebyshevPropagator::chebyshev_substep(StateVector& state, const PropagatorPlan& plan) {
    const auto& k = kernels::active();
    const std::size_t dim = state.dim();
    const double shift = plan.bounds.center();
    const double inv_h = 1.0 / plan.bounds.half_width();
    const auto& c = plan.coefficients;

    // cur holds T_n(X) psi, prev holds T_{n-1}(X) psi; state doubles as the
    // first "cur" buffer, the result ends up in acc_ and is swapped back.
    StateVector* cur = &state;
    StateVector* prev = &prev_;
    prev->set_zero();
    std::copy(state.data(), state.data() + dim, acc_.data());
    k.scale(c[0], acc_.data(), dim);

    const std::size_t block = SpinOperator::kBlock;
    for (int n = 1; n <= plan.order; ++n) {
        const double alpha = n == 1 ? inv_h : 2.0 * inv_h;
        const cplx coef = c[static_cast<std::size_t>(n)];
        for (std::size_t b = 0; b < dim; b += block) {
            const std::size_t e = std::min(dim, b + block);
            cplx* w = block_.data();
            op_->apply_range(cur->data(), w, b, e, k);
            k.chebyshev_update(prev->data(), cur->data(), w, alpha, shift, coef, acc_.data(), b,
                               e);
        }
        std::swap(cur, prev);
    }
    matvecs_ += static_cast<std::uint64_t>(plan.order);
    std::swap(state, acc_);
}

StateVector evolve_step(const PropagatorPlan& plan, const SpinOperator& op,
                        const StateVector& state) {
    ChebyshevPropagator prop(op, plan.bounds, plan.tolerance);
    StateVector out = state;
    prop.step(out, plan);
    return out;
}

StateVector evolve_step(const PropagatorPlan& plan, const HamiltonianSpec& spec,
                        const StateVector& state) {
    return evolve_step(plan, make_operator(spec), state);
}

namespace {

// Bessel weights for one target time, phase exp(-i center tau) folded in.
std::vector<cplx> chebyshev_weights(const SpectralBounds& bounds, double tau, int order) {
    std::vector<cplx> c(static_cast<std::size_t>(order) + 1);
    const double z = bounds.half_width() * tau;
    const cplx phase = std::exp(cplx{0.0, -bounds.center() * tau});
    cplx minus_i_pow{1.0, 0.0};
    for (int n = 0; n <= order; ++n) {
        const double weight = n == 0 ? 1.0 : 2.0;
        c[static_cast<std::size_t>(n)] =
            phase * minus_i_pow * (weight * std::cyl_bessel_j(static_cast<double>(n), z));
        minus_i_pow *= cplx{0.0, -1.0};
    }
    return c;
}

// <phi|H|phi> for phi = sum_n c_n T_n(X) psi from the moments mu_k of psi,
// using T_a T_b = (T_{a+b} + T_{|a-b|}) / 2 and H = center + half_width X.
double energy_from_moments(const std::vector<double>& mu, const std::vector<cplx>& c,
                           const SpectralBounds& bounds) {
    const int order = static_cast<int>(c.size()) - 1;
    auto gram = [&](int a, int b) {
        return 0.5 * (mu[static_cast<std::size_t>(a + b)] +
                      mu[static_cast<std::size_t>(std::abs(a - b))]);
    };
    cplx norm_sq{};
    cplx x_expect{};
    for (int n = 0; n <= order; ++n) {
        cplx row_g{};
        cplx row_x{};
        for (int m = 0; m <= order; ++m) {
            const cplx cm = c[static_cast<std::size_t>(m)];
            row_g += cm * gram(n, m);
            row_x += cm * 0.5 * (gram(n, m + 1) + gram(n, std::abs(m - 1)));
        }
        const cplx cn = std::conj(c[static_cast<std::size_t>(n)]);
        norm_sq += cn * row_g;
        x_expect += cn * row_x;
    }
    return bounds.center() * norm_sq.real() + bounds.half_width() * x_expect.real();
}

class BatchEvolver {
  public:
    BatchEvolver(const SpinOperator& op, const SpectralBounds& bounds, int batch)
        : op_(op), bounds_(bounds), prev_(op.n_spins()), cur_(op.n_spins()),
          block_(SpinOperator::kBlock) {
        outputs_.reserve(static_cast<std::size_t>(batch));
        for (int i = 0; i < batch; ++i) {
            outputs_.emplace_back(op.n_spins());
        }
    }

    // outputs_[k] = exp(-i H taus[k]) state; energies[k] its energy.
    void run(const StateVector& state, std::span<const double> taus, int order,
             std::vector<double>& energies) {
        const auto& k = kernels::active();
        const std::size_t dim = state.dim();
        const std::size_t count = taus.size();
        const double shift = bounds_.center();
        const double inv_h = 1.0 / bounds_.half_width();

        std::vector<std::vector<cplx>> weights;
        weights.reserve(count);
        for (double tau : taus) {
            weights.push_back(chebyshev_weights(bounds_, tau, order));
        }
        // Moments up to 2 order + 1 need T_{order+1} psi: one application past the series.
        std::vector<double> mu(2 * static_cast<std::size_t>(order) + 2, 0.0);
        mu[0] = k.norm_sq(state.data(), dim);

        std::copy(state.data(), state.data() + dim, cur_.data());
        prev_.set_zero();
        for (std::size_t s = 0; s < count; ++s) {
            std::copy(state.data(), state.data() + dim, outputs_[s].data());
            k.scale(weights[s][0], outputs_[s].data(), dim);
        }
        for (int n = 1; n <= order + 1; ++n) {
            const double alpha = n == 1 ? inv_h : 2.0 * inv_h;
            const bool accumulate = n <= order;
            const cplx c0 = accumulate ? weights[0][static_cast<std::size_t>(n)] : cplx{};
            double cross = 0.0;
            double self = 0.0;
            for (std::size_t b = 0; b < dim; b += SpinOperator::kBlock) {
                const std::size_t e = std::min(dim, b + SpinOperator::kBlock);
                op_.apply_range(cur_.data(), block_.data(), b, e, k);
                // prev <- T_n psi on this block, added to the first output
                k.chebyshev_update(prev_.data(), cur_.data(), block_.data(), alpha, shift, c0,
                                   outputs_[0].data(), b, e);
                const cplx* next = prev_.data() + b;
                if (accumulate) {
                    for (std::size_t s = 1; s < count; ++s) {
                        k.axpy(weights[s][static_cast<std::size_t>(n)], next,
                               outputs_[s].data() + b, e - b);
                    }
                }
                cross += k.dot(cur_.data() + b, next, e - b).real();
                self += k.norm_sq(next, e - b);
            }
            if (n == 1) {
                mu[1] = cross;
            } else {
                mu[static_cast<std::size_t>(2 * n - 1)] = 2.0 * cross - mu[1];
            }
            mu[static_cast<std::size_t>(2 * n)] = 2.0 * self - mu[0];
            std::swap(cur_, prev_);
        }
        matvecs_ += static_cast<std::uint64_t>(order) + 1;
        energies.resize(count);
        for (std::size_t s = 0; s < count; ++s) {
            energies[s] = energy_from_moments(mu, weights[s], bounds_);
        }
    }

    const StateVector& output(std::size_t s) const { return outputs_[s]; }
    StateVector& output(std::size_t s) { return outputs_[s]; }
    std::uint64_t matvecs() const { return matvecs_; }

  private:
    const SpinOperator& op_;
    SpectralBounds bounds_;
    StateVector prev_;
    StateVector cur_;
    std::vector<cplx> block_;
    std::vector<StateVector> outputs_;
    std::uint64_t matvecs_ = 0;
};

} // namespace

Trajectory evolve_trajectory(const SpinOperator& op, const SpectralBounds& bounds,
                             const StateVector& state0, std::span<const double> t_grid,
                             const Observer& observer, const TrajectoryOptions& options) {
    if (t_grid.empty() || t_grid.front() != 0.0) {
        throw UsageError("evolve_trajectory: time grid must start at 0");
    }
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) {
            throw UsageError("evolve_trajectory: time grid must be strictly increasing");
        }
    }
    if (options.batch_samples < 1 || options.max_order < 2 || !(options.tolerance > 0.0)) {
        throw UsageError("evolve_trajectory: invalid options");
    }
    if (state0.dim() != op.dim()) {
        throw UsageError("evolve_trajectory: state does not match the operator");
    }
    if (!(bounds.e_max > bounds.e_min)) {
        throw UsageError("evolve_trajectory: bounds must satisfy e_min < e_max");
    }

    Trajectory traj;
    traj.t.assign(t_grid.begin(), t_grid.end());
    traj.energy.reserve(t_grid.size());
    StateVector scratch(state0.n_spins());
    const double e0 = energy_expectation(state0, op, scratch);
    traj.energy.push_back(e0);
    if (observer) {
        observer(0, 0.0, state0);
    }
    if (t_grid.size() == 1) {
        traj.final_state = state0;
        return traj;
    }
    if (op.is_zero()) {
        // identity propagation
        for (std::size_t i = 1; i < t_grid.size(); ++i) {
            traj.energy.push_back(e0);
            if (observer) {
                observer(i, t_grid[i], state0);
            }
        }
        traj.final_state = state0;
        return traj;
    }

    const double h = bounds.half_width();
    const int batch = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(options.batch_samples), t_grid.size() - 1));
    BatchEvolver evolver(op, bounds, batch);
    StateVector state = state0;
    const double n0 = state0.norm();
    std::vector<double> taus;
    std::vector<double> energies;
    std::size_t i = 1;
    while (i < t_grid.size()) {
        const double t_start = t_grid[i - 1];
        taus.clear();
        int order = 0;
        // grow the batch while the expansion order stays within bounds
        while (i + taus.size() < t_grid.size() && taus.size() < static_cast<std::size_t>(batch)) {
            const double tau = t_grid[i + taus.size()] - t_start;
            const int needed = required_order(h * tau, options.tolerance, options.max_order);
            if (needed > options.max_order) {
                break;
            }
            taus.push_back(tau);
            order = needed;
        }
        if (taus.empty()) {
            // one grid interval needs more than max_order: split it into substeps
            const double dt = t_grid[i] - t_start;
            ChebyshevPropagator prop(op, bounds, options.tolerance, options.max_order);
            prop.step(state, dt);
            traj.matvecs += prop.matvec_count();
            traj.energy.push_back(energy_expectation(state, op, scratch));
            ++traj.matvecs;
            if (observer) {
                observer(i, t_grid[i], state);
            }
            ++i;
            continue;
        }
        evolver.run(state, taus, order, energies);
        for (std::size_t s = 0; s < taus.size(); ++s) {
            const StateVector& out = evolver.output(s);
            traj.energy.push_back(energies[s]);
            if (observer) {
                observer(i + s, t_grid[i + s], out);
            }
        }
        std::swap(state, evolver.output(taus.size() - 1));
        i += taus.size();

        const double n = state.norm();
        if (!std::isfinite(n) || !state.all_finite()) {
            throw NumericError("Chebyshev step produced non-finite amplitudes");
        }
        if (std::abs(n - n0) > 1e-8 * n0) {
            throw NumericError("Chebyshev step changed the norm; spectral bounds do not contain "
                               "the spectrum");
        }
    }
    traj.matvecs += evolver.matvecs() + 1;
    traj.final_state = std::move(state);
    return traj;
}

DensityMatrix4 free_central_rho0(const std::array<cplx, 4>& a, double J, double t) {
    const std::array<double, 4> e{-J / 4.0, 3.0 * J / 4.0, -J / 4.0, -J / 4.0};
    DensityMatrix4 rho;
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            rho(k, l) = std::exp(cplx{0.0, -(e[k] - e[l]) * t}) * a[k] * std::conj(a[l]);
        }
    }
    return rho;
}

std::vector<double> uniform_grid(double t_max, int sample_count) {
    if (sample_count < 2 || !(t_max > 0.0)) {
        throw UsageError("uniform_grid: need t_max > 0 and at least 2 samples");
    }
    std::vector<double> grid(static_cast<std::size_t>(sample_count));
    for (int i = 0; i < sample_count; ++i) {
        grid[static_cast<std::size_t>(i)] = t_max * i / (sample_count - 1);
    }
    return grid;
}

} // namespace decohere
