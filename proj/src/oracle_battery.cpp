#include "decohere/oracle_battery.hpp"

#include "decohere/groundstate.hpp"
#include "decohere/initstate.hpp"
#include "decohere/model.hpp"
#include "decohere/observe.hpp"
#include "decohere/oracle.hpp"
#include "decohere/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace decohere {
namespace {

HamiltonianSpec seeded_spec(int n_bath, Connectivity k, CouplingKind delta_kind, double delta,
                            double omega, std::uint64_t seed) {
    const auto topo = build_topology(k, n_bath);
    auto central = sample_couplings(delta_kind, delta, central_bath_pairs(n_bath), seed);
    auto bath = sample_couplings(CouplingKind::heisenberg_like, omega, bath_pairs(topo), ~seed);
    return build_spec(-5.0, topo, std::move(central), std::move(bath));
}

double max_diff(const StateVector& a, const StateVector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

std::string format(const char* fmt, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, fmt, a, b);
    return buf;
}

} // namespace

OracleCheck check_apply_vs_dense(int spec_count, int vectors_per_spec, int max_bath,
                                 std::uint64_t seed) {
    const Connectivity ks[] = {Connectivity::none, Connectivity::ring, Connectivity::complete};
    OracleCheck out{"apply_vs_dense", 0.0, 1e-12, {}};
    for (int s = 0; s < spec_count; ++s) {
        const int n_bath = 1 + s % max_bath;
        const Connectivity k = n_bath < 3 && ks[s % 3] == Connectivity::ring ? Connectivity::complete
                                                                            : ks[s % 3];
        const auto spec = seeded_spec(n_bath, k, CouplingKind::heisenberg_like, 0.5, 0.5,
                                      seed * 1000 + static_cast<std::uint64_t>(s));
        const auto op = make_operator(spec);
        const auto dense = densify(spec);
        StateVector out_vec(spec.n_spins());
        for (int v = 0; v < vectors_per_spec; ++v) {
            const auto x = random_bath_state(static_cast<int>(spec.n_spins()),
                                             seed * 7919 + static_cast<std::uint64_t>(s * 97 + v));
            op.apply(x, out_vec);
            out.error = std::max(out.error, max_diff(out_vec, dense.apply(x)));
        }
    }
    out.detail = std::to_string(spec_count) + " specs x " + std::to_string(vectors_per_spec) +
                 " vectors";
    return out;
}

OracleCheck check_step_vs_dense(int n_bath, double t, std::uint64_t seed) {
    const auto spec =
        seeded_spec(n_bath, Connectivity::ring, CouplingKind::heisenberg_like, 0.3, 0.3, seed);
    const auto op = make_operator(spec);
    const auto psi = compose_initial(CentralState::up_down, random_bath_state(n_bath, seed));
    const auto plan = make_plan(estimate_bounds(op), t);
    const auto cheb = evolve_step(plan, op, psi);
    const auto ref = dense_evolve(densify(spec), psi, t);
    return {"step_vs_dense", max_diff(cheb, ref), 1e-10,
            format("N=%g, t=%g", n_bath, t)};
}

OracleCheck check_trajectory_vs_dense(int n_bath, double t_max, int samples, std::uint64_t seed) {
    const auto spec =
        seeded_spec(n_bath, Connectivity::ring, CouplingKind::heisenberg_like, 0.15, 0.5, seed);
    const auto op = make_operator(spec);
    const auto dense = densify(spec);
    const DenseEvolver evolver(dense.matrix);
    const auto psi = compose_initial(CentralState::up_down, random_bath_state(n_bath, seed));
    const Eigen::Map<const Eigen::VectorXcd> psi_vec(psi.data(),
                                                      static_cast<Eigen::Index>(psi.dim()));
    const Eigen::VectorXcd psi0 = psi_vec;
    const auto grid = uniform_grid(t_max, samples);
    OracleCheck out{"trajectory_vs_dense", 0.0, 1e-9, format("N=%g, t_max=%g", n_bath, t_max)};
    evolve_trajectory(op, estimate_bounds(op), psi, grid,
                      [&](std::size_t, double t, const StateVector& s) {
                          const Eigen::VectorXcd ref = evolver.evolve(psi0, t);
                          for (std::size_t i = 0; i < s.dim(); ++i) {
                              out.error = std::max(
                                  out.error, std::abs(s[i] - ref[static_cast<Eigen::Index>(i)]));
                          }
                      });
    return out;
}

OracleCheck check_echo_vs_block(int n_bath, double t_max, int samples, std::uint64_t seed) {
    const auto spec =
        seeded_spec(n_bath, Connectivity::ring, CouplingKind::isotropic_fixed, -0.6, 0.8, seed);
    const auto bath = random_bath_state(n_bath, seed);
    const auto psi = compose_initial(CentralState::up_down, bath);
    const auto a = to_eigenbasis(central_product_amplitudes(CentralState::up_down));
    const auto grid = uniform_grid(t_max, samples);
    const auto reference = echo_commuting(a, bath, spec, grid);
    const auto op = make_operator(spec);
    OracleCheck out{"echo_vs_block", 0.0, 1e-9, format("N=%g, t_max=%g", n_bath, t_max)};
    evolve_trajectory(op, estimate_bounds(op), psi, grid,
                      [&](std::size_t i, double t, const StateVector& s) {
                          const double echo =
                              loschmidt_echo(reduce(s), free_central_rho0(a, spec.J, t));
                          out.error = std::max(out.error, std::abs(echo - reference[i]));
                      });
    return out;
}

OracleCheck check_ground_state_vs_dense(int n_bath, std::uint64_t seed) {
    const auto spec =
        seeded_spec(n_bath, Connectivity::ring, CouplingKind::heisenberg_like, 0.15, 0.5, seed);
    const auto gs = bath_ground_state(spec);
    const auto dense = densify_bath(spec);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(dense.matrix,
                                                             Eigen::EigenvaluesOnly);
    const double e_min = eig.eigenvalues()(0);
    return {"ground_state_vs_dense", std::abs(gs.energy - e_min), 1e-9,
            format("N=%g, E0=%.12f", n_bath, e_min)};
}

std::vector<OracleCheck> run_oracle_battery() {
    return {check_apply_vs_dense(), check_step_vs_dense(), check_trajectory_vs_dense(),
            check_echo_vs_block(), check_ground_state_vs_dense()};
}

} // namespace decohere
