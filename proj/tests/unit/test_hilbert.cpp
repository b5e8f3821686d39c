#include "decohere/errors.hpp"
#include "decohere/hilbert.hpp"
#include "decohere/oracle.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace decohere;
using decohere::testing::max_abs_diff;
using decohere::testing::random_vector;

namespace {

const SpinSite s1 = SpinSite::central(1);
const SpinSite s2 = SpinSite::central(2);

std::vector<TwoSpinTerm> heisenberg_pair(double c) {
    return {{s1, s2, Axis::x, c}, {s1, s2, Axis::y, c}, {s1, s2, Axis::z, c}};
}

} // namespace

TEST_CASE("site bits follow the documented layout") {
    CHECK(s1.bit() == 0);
    CHECK(s2.bit() == 1);
    CHECK(SpinSite::bath(1).bit() == 2);
    CHECK(SpinSite::bath(7).bit() == 8);
    CHECK(SpinSite::bath(1).bit(Layout::bath_only) == 0);
}

TEST_CASE("single term actions on two spins") {
    SUBCASE("z on aligned pair") {
        StateVector acc(2);
        apply_term({s1, s2, Axis::z, 1.0}, StateVector::basis(2, 0), acc);
        CHECK(acc[0] == cplx{-0.25, 0.0});
        CHECK(std::abs(acc[1]) + std::abs(acc[2]) + std::abs(acc[3]) == 0.0);
    }
    SUBCASE("x flips both spins") {
        // |up,down> is index 2 (S2 down), |down,up> is index 1
        StateVector acc(2);
        apply_term({s1, s2, Axis::x, 1.0}, StateVector::basis(2, 2), acc);
        CHECK(acc[1] == cplx{-0.25, 0.0});
        CHECK(std::abs(acc[0]) + std::abs(acc[2]) + std::abs(acc[3]) == 0.0);
    }
    SUBCASE("y picks up the sign of sigma_y sigma_y") {
        // sigma_y sigma_y |up,up> = -|down,down>, |up,down> -> +|down,up>
        StateVector acc(2);
        apply_term({s1, s2, Axis::y, 1.0}, StateVector::basis(2, 0), acc);
        CHECK(acc[3] == cplx{0.25, 0.0});
        StateVector acc2(2);
        apply_term({s1, s2, Axis::y, 1.0}, StateVector::basis(2, 2), acc2);
        CHECK(acc2[1] == cplx{-0.25, 0.0});
    }
    SUBCASE("apply_term accumulates") {
        StateVector acc = StateVector::basis(2, 0);
        apply_term({s1, s2, Axis::z, 4.0}, StateVector::basis(2, 0), acc);
        CHECK(acc[0] == cplx{0.0, 0.0});
    }
}

TEST_CASE("singlet is an eigenstate of the central exchange with energy 3J/4") {
    const double J = -5.0;
    const double r = 1.0 / std::numbers::sqrt2;
    StateVector singlet(2, {0.0, -r, r, 0.0});
    const auto out = apply_hamiltonian(heisenberg_pair(J), singlet);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(out[i] - (-3.75) * singlet[i]) < 1e-15);
    }
    // triplets at -J/4
    for (std::size_t idx : {std::size_t{0}, std::size_t{3}}) {
        const auto t = apply_hamiltonian(heisenberg_pair(J), StateVector::basis(2, idx));
        CHECK(std::abs(t[idx] - cplx{1.25, 0.0}) < 1e-15);
    }
}

TEST_CASE("central exchange on singlet times bath state") {
    testing::SpecOptions o;
    o.n_bath = 3;
    o.connectivity = Connectivity::none;
    o.flags = {true, false, false};
    const auto spec = testing::make_spec(o, 1);
    const auto bath = random_vector(3, 5);
    StateVector full(5);
    const double r = 1.0 / std::numbers::sqrt2;
    for (std::size_t b = 0; b < bath.dim(); ++b) {
        full[1 + 4 * b] = -r * bath[b];
        full[2 + 4 * b] = r * bath[b];
    }
    const auto out = apply_hamiltonian(spec, full);
    for (std::size_t i = 0; i < full.dim(); ++i) {
        CHECK(std::abs(out[i] + 3.75 * full[i]) < 1e-14);
    }
}

TEST_CASE("empty term list gives the zero vector") {
    const auto v = random_vector(4, 9);
    const auto out = apply_hamiltonian(std::vector<TwoSpinTerm>{}, v);
    CHECK(out.norm() == 0.0);
    const SpinOperator op(4, {});
    CHECK(op.is_zero());
}

TEST_CASE("fused operator equals the sum of per-term applications") {
    testing::SpecOptions o;
    o.connectivity = Connectivity::complete;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto spec = testing::make_spec(o, seed);
        const auto v = random_vector(spec.n_spins(), seed + 100);
        StateVector acc(spec.n_spins());
        for (const auto& t : spec.terms()) {
            apply_term(t, v, acc);
        }
        CHECK(max_abs_diff(acc, apply_hamiltonian(spec, v)) < 1e-14);
    }
}

TEST_CASE("matrix-free apply matches the dense matrix") {
    testing::SpecOptions o;
    o.connectivity = Connectivity::ring;
    const auto spec = testing::make_spec(o, 77);
    const auto dense = densify(spec);
    for (std::uint64_t k = 0; k < 10; ++k) {
        const auto v = random_vector(spec.n_spins(), 1000 + k, false);
        CHECK(max_abs_diff(apply_hamiltonian(spec, v), dense.apply(v)) < 1e-13);
    }
}

TEST_CASE("operator is Hermitian and linear") {
    testing::SpecOptions o;
    o.connectivity = Connectivity::complete;
    const auto spec = testing::make_spec(o, 3);
    const auto u = random_vector(spec.n_spins(), 1);
    const auto v = random_vector(spec.n_spins(), 2);
    const auto hu = apply_hamiltonian(spec, u);
    const auto hv = apply_hamiltonian(spec, v);
    CHECK(std::abs(inner_product(u, hv) - std::conj(inner_product(v, hu))) < 1e-12);

    const cplx alpha{0.3, -1.2};
    const cplx beta{-2.0, 0.5};
    StateVector mix(spec.n_spins());
    for (std::size_t i = 0; i < mix.dim(); ++i) {
        mix[i] = alpha * u[i] + beta * v[i];
    }
    const auto hmix = apply_hamiltonian(spec, mix);
    double err = 0.0;
    for (std::size_t i = 0; i < mix.dim(); ++i) {
        err = std::max(err, std::abs(hmix[i] - (alpha * hu[i] + beta * hv[i])));
    }
    CHECK(err < 1e-12);
}

TEST_CASE("inner product conjugates the left argument") {
    const auto a = random_vector(5, 1);
    const auto b = random_vector(5, 2);
    cplx naive{};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        naive += std::conj(a[i]) * b[i];
    }
    CHECK(std::abs(inner_product(a, b) - naive) < 1e-14);
    CHECK(std::abs(inner_product(a, a) - 1.0) < 1e-14);
    CHECK(std::abs(inner_product(StateVector::basis(3, 1), StateVector::basis(3, 2))) == 0.0);
}

TEST_CASE("usage errors") {
    StateVector small(3);
    StateVector big(4);
    CHECK_THROWS_AS(apply_term({s1, s2, Axis::x, 1.0}, small, big), UsageError);
    CHECK_THROWS_AS(apply_term({s1, s1, Axis::x, 1.0}, small, small), UsageError);
    CHECK_THROWS_AS(inner_product(small, big), UsageError);
    StateVector zero(3);
    CHECK_THROWS_AS(zero.normalize(), NumericError);
}
