#include "decohere/errors.hpp"
#include "decohere/groundstate.hpp"
#include "decohere/model.hpp"
#include "decohere/oracle.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace decohere;

namespace {

double dense_min(const HamiltonianSpec& spec) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(densify_bath(spec).matrix,
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double residual(const SpinOperator& op, const GroundState& g) {
    StateVector hv(op.n_spins());
    op.apply(g.state, hv);
    double r = 0.0;
    for (std::size_t i = 0; i < hv.dim(); ++i) {
        r += std::norm(hv[i] - g.energy * g.state[i]);
    }
    return std::sqrt(r);
}

} // namespace

TEST_CASE("ground energy matches dense diagonalization") {
    for (auto rz : {Reorthogonalization::full, Reorthogonalization::selective}) {
        for (auto c : {Connectivity::ring, Connectivity::complete}) {
            testing::SpecOptions o;
            o.n_bath = 4;
            o.connectivity = c;
            const auto spec = testing::make_spec(o, 12);
            LanczosParams p;
            p.reorthogonalization = rz;
            const auto g = bath_ground_state(spec, p);
            CHECK(std::abs(g.energy - dense_min(spec)) < 1e-10);
            CHECK(g.residual <= 1e-10);
            CHECK(residual(make_bath_operator(spec), g) <= 1e-10);
            CHECK(std::abs(g.state.norm() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("isotropic ferromagnetic ring") {
    testing::SpecOptions o;
    o.n_bath = 4;
    o.omega_kind = CouplingKind::isotropic_fixed;
    o.omega = 0.3;
    const auto spec = testing::make_spec(o, 1);
    const auto g = bath_ground_state(spec);
    CHECK(g.energy == doctest::Approx(-(4.0 / 4.0) * 0.3).epsilon(1e-12));
    CHECK(dense_min(spec) == doctest::Approx(-0.3));
}

TEST_CASE("larger bath: residual and Rayleigh quotient bound") {
    testing::SpecOptions o;
    o.n_bath = 12;
    o.connectivity = Connectivity::ring;
    const auto spec = testing::make_spec(o, 3);
    const auto op = make_bath_operator(spec);
    const auto g = ground_state(op);
    CHECK(residual(op, g) <= 1e-10);
    StateVector hv(op.n_spins());
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto v = testing::random_vector(op.n_spins(), 900 + s);
        op.apply(v, hv);
        CHECK(g.energy <= inner_product(v, hv).real());
    }
}

TEST_CASE("zero bath operator is flagged degenerate") {
    testing::SpecOptions o;
    o.omega = 0.0;
    const auto g = bath_ground_state(testing::make_spec(o, 1));
    CHECK(g.degenerate);
    CHECK(g.energy == 0.0);
    CHECK(std::abs(g.state.norm() - 1.0) < 1e-12);
}

TEST_CASE("same seed gives the same vector") {
    testing::SpecOptions o;
    o.n_bath = 8;
    const auto spec = testing::make_spec(o, 2);
    const auto a = bath_ground_state(spec);
    const auto b = bath_ground_state(spec);
    CHECK(testing::max_abs_diff(a.state, b.state) == 0.0);
}

TEST_CASE("iteration budget exhaustion reports the best residual") {
    testing::SpecOptions o;
    o.n_bath = 12;
    o.connectivity = Connectivity::complete;
    const auto spec = testing::make_spec(o, 2);
    LanczosParams p;
    p.max_iterations = 5;
    p.krylov_dim = 5;
    try {
        bath_ground_state(spec, p);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.best_residual() > 1e-10);
    }
}
