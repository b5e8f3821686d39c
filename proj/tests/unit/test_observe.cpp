#include "decohere/errors.hpp"
#include "decohere/initstate.hpp"
#include "decohere/model.hpp"
#include "decohere/observe.hpp"
#include "decohere/oracle.hpp"
#include "decohere/propagate.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace decohere;

TEST_CASE("quadratic entropy reference values") {
    CHECK(quadratic_entropy(DensityMatrix4::pure({0.0, 1.0, 0.0, 0.0})) == doctest::Approx(0.0));
    CHECK(quadratic_entropy(DensityMatrix4::diagonal(0.5, 0.5, 0.0, 0.0)) == doctest::Approx(0.5));
    CHECK(quadratic_entropy(DensityMatrix4::diagonal(1.0 / 6, 0.5, 1.0 / 6, 1.0 / 6)) ==
          doctest::Approx(2.0 / 3.0));
    CHECK(quadratic_entropy(DensityMatrix4::diagonal(0.25, 0.25, 0.25, 0.25)) ==
          doctest::Approx(0.75));
}

TEST_CASE("Loschmidt echo reference values") {
    const double r = 1.0 / std::numbers::sqrt2;
    const std::array<cplx, 4> a{0.0, r, r, 0.0};
    const auto pure = DensityMatrix4::pure(a);
    CHECK(loschmidt_echo(pure, pure) == doctest::Approx(1.0));
    const auto mixed = DensityMatrix4::diagonal(1.0 / 6, 0.5, 1.0 / 6, 1.0 / 6);
    for (double t : {0.0, 0.7, 13.1}) {
        CHECK(loschmidt_echo(mixed, free_central_rho0(a, -5.0, t)) == doctest::Approx(1.0 / 3.0));
    }
}

TEST_CASE("reduced density matrix") {
    SUBCASE("singlet times bath") {
        const auto rho = reduce(compose_initial(CentralState::singlet, random_bath_state(5, 2)));
        CHECK(std::abs(rho(1, 1) - 1.0) < 1e-12);
        CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
        CHECK(std::abs(rho(0, 0)) + std::abs(rho(2, 2)) + std::abs(rho(3, 3)) < 1e-12);
    }
    SUBCASE("random full states average to the identity") {
        DensityMatrix4 avg;
        const int samples = 400;
        for (int s = 0; s < samples; ++s) {
            const auto rho = reduce(testing::random_vector(6, 500 + static_cast<std::uint64_t>(s)));
            CHECK(rho.hermiticity_error() < 1e-12);
            CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
            CHECK(rho.min_eigenvalue() > -1e-10);
            for (int k = 0; k < 4; ++k) {
                for (int l = 0; l < 4; ++l) {
                    avg(k, l) += rho(k, l) / static_cast<double>(samples);
                }
            }
        }
        for (int k = 0; k < 4; ++k) {
            for (int l = 0; l < 4; ++l) {
                CHECK(std::abs(avg(k, l) - (k == l ? 0.25 : 0.0)) < 0.05);
            }
        }
    }
    SUBCASE("unnormalized input is rejected") {
        auto v = testing::random_vector(4, 1);
        v[0] += 0.1;
        CHECK_THROWS_AS(reduce(v), UsageError);
    }
}

TEST_CASE("energy expectation") {
    testing::SpecOptions o;
    o.flags = {true, false, false};
    const auto hc = testing::make_spec(o, 1);
    const auto psi = compose_initial(CentralState::up_down, random_bath_state(4, 7));
    CHECK(energy_expectation(psi, hc) == doctest::Approx(-5.0 / 4.0));
    const auto singlet = compose_initial(CentralState::singlet, random_bath_state(4, 7));
    CHECK(energy_expectation(singlet, hc) == doctest::Approx(-3.75));

    o.flags = {};
    const auto full = testing::make_spec(o, 3);
    const auto dense = densify(full);
    const auto v = testing::random_vector(full.n_spins(), 11);
    const double reference = inner_product(v, dense.apply(v)).real();
    CHECK(std::abs(energy_expectation(v, full) - reference) < 1e-12);
}

TEST_CASE("eigenbasis transform is orthogonal") {
    const auto& u = eigenbasis_transform();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int c = 0; c < 4; ++c) {
                s += u[i][c] * u[j][c];
            }
            CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0));
        }
    }
}
