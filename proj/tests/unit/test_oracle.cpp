#include "decohere/errors.hpp"
#include "decohere/initstate.hpp"
#include "decohere/observe.hpp"
#include "decohere/oracle.hpp"
#include "decohere/oracle_battery.hpp"
#include "decohere/propagate.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace decohere;
using decohere::testing::max_abs_diff;
using decohere::testing::random_vector;

TEST_CASE("empty spec densifies to zero") {
    testing::SpecOptions o;
    o.flags = {false, false, false};
    CHECK(densify(testing::make_spec(o, 1)).matrix.norm() == 0.0);
}

TEST_CASE("dense size cap") {
    CHECK_THROWS_AS(densify(std::vector<TwoSpinTerm>{}, 13), UsageError);
}

TEST_CASE("dense evolution basics") {
    testing::SpecOptions o;
    const auto dense = densify(testing::make_spec(o, 2));
    const auto v = random_vector(dense.n_spins, 3);
    CHECK(max_abs_diff(dense_evolve(dense, v, 0.0), v) < 1e-13);
    const auto w = dense_evolve(dense, v, 2.5);
    CHECK(std::abs(w.norm() - 1.0) < 1e-12);
    CHECK(max_abs_diff(dense_evolve(dense, w, -2.5), v) < 1e-12);

    const DenseEvolver ev(dense.matrix);
    Eigen::VectorXcd ground = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dense.dim()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense.matrix);
    ground = es.eigenvectors().col(0);
    const Eigen::VectorXcd g_t = ev.evolve(ground, 1.3);
    const cplx phase = std::exp(cplx{0.0, -es.eigenvalues()(0) * 1.3});
    CHECK((g_t - phase * ground).cwiseAbs().maxCoeff() < 1e-12);
}

namespace {

std::vector<double> full_space_echo(const HamiltonianSpec& spec, const StateVector& bath,
                                    std::span<const double> grid) {
    const auto psi0 = compose_initial(CentralState::up_down, bath);
    const auto a = to_eigenbasis(central_product_amplitudes(CentralState::up_down));
    const auto dense = densify(spec);
    std::vector<double> echo;
    for (double t : grid) {
        const auto rho = reduce(dense_evolve(dense, psi0, t));
        echo.push_back(loschmidt_echo(rho, free_central_rho0(a, spec.J, t)));
    }
    return echo;
}

} // namespace

TEST_CASE("bath-space echo equals the full-space echo") {
    testing::SpecOptions o;
    o.delta_kind = CouplingKind::isotropic_fixed;
    o.delta = -0.6;
    o.omega_kind = CouplingKind::heisenberg_like;
    o.omega = 0.8;
    const auto grid = uniform_grid(20.0, 41);
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto spec = testing::make_spec(o, seed);
        const auto bath = random_bath_state(o.n_bath, seed + 50);
        const auto a = to_eigenbasis(central_product_amplitudes(CentralState::up_down));
        const auto fast = echo_commuting(a, bath, spec, grid);
        const auto full = full_space_echo(spec, bath, grid);
        double err = 0.0;
        double min_echo = 1.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            err = std::max(err, std::abs(fast[i] - full[i]));
            min_echo = std::min(min_echo, full[i]);
        }
        CHECK(err < 1e-8);
        CHECK(min_echo < 0.95); // the comparison is not between two flat lines
    }
}

TEST_CASE("bath-space echo for other central states") {
    testing::SpecOptions o;
    o.n_bath = 3;
    o.connectivity = Connectivity::complete;
    o.delta_kind = CouplingKind::isotropic_fixed;
    o.delta = 0.9;
    const auto spec = testing::make_spec(o, 4);
    const auto bath = random_bath_state(3, 8);
    const auto grid = uniform_grid(10.0, 11);
    for (CentralState cs : {CentralState::up_up, CentralState::singlet, CentralState::down_up}) {
        const auto a = to_eigenbasis(central_product_amplitudes(cs));
        const auto fast = echo_commuting(a, bath, spec, grid);
        const auto psi0 = compose_initial(cs, bath);
        const auto dense = densify(spec);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto rho = reduce(dense_evolve(dense, psi0, grid[i]));
            CHECK(std::abs(fast[i] - loschmidt_echo(rho, free_central_rho0(a, spec.J, grid[i]))) <
                  1e-8);
        }
    }
}

TEST_CASE("bath-space echo without couplings is one") {
    testing::SpecOptions o;
    o.delta_kind = CouplingKind::isotropic_fixed;
    o.delta = 0.0;
    o.omega = 0.0;
    const auto spec = testing::make_spec(o, 1);
    const auto a = to_eigenbasis(central_product_amplitudes(CentralState::up_down));
    const auto grid = uniform_grid(5.0, 6);
    for (double l : echo_commuting(a, random_bath_state(4, 1), spec, grid)) {
        CHECK(l == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("bath-space echo does not depend on an isotropic bath coupling") {
    testing::SpecOptions o;
    o.delta_kind = CouplingKind::isotropic_fixed;
    o.delta = -0.5;
    o.omega_kind = CouplingKind::isotropic_fixed;
    const auto a = to_eigenbasis(central_product_amplitudes(CentralState::up_down));
    const auto bath = random_bath_state(4, 3);
    const auto grid = uniform_grid(15.0, 16);
    o.omega = 0.15;
    const auto e1 = echo_commuting(a, bath, testing::make_spec(o, 1), grid);
    o.omega = 0.6;
    const auto e2 = echo_commuting(a, bath, testing::make_spec(o, 1), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(e1[i] - e2[i]) < 1e-10);
    }
}

TEST_CASE("bath-space echo rejects anisotropic coupling") {
    testing::SpecOptions o;
    const auto spec = testing::make_spec(o, 1);
    const auto a = to_eigenbasis(central_product_amplitudes(CentralState::up_down));
    const std::vector<double> grid{0.0, 1.0};
    CHECK_THROWS_AS(echo_commuting(a, random_bath_state(4, 1), spec, grid), UsageError);
}

TEST_CASE("oracle battery passes") {
    for (const auto& check : decohere::run_oracle_battery()) {
        INFO(check.name << ": " << check.error << " (" << check.detail << ")");
        CHECK(check.passed());
    }
}
