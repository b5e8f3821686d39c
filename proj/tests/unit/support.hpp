#pragma once

#include "decohere/hilbert.hpp"
#include "decohere/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace decohere::testing {

inline StateVector random_vector(unsigned n_spins, std::uint64_t seed, bool normalized = true) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    StateVector v(n_spins);
    for (auto& a : v.amplitudes()) {
        a = cplx{g(rng), g(rng)};
    }
    if (normalized) {
        v.normalize();
    }
    return v;
}

inline double max_abs_diff(const StateVector& a, const StateVector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

struct SpecOptions {
    int n_bath = 4;
    Connectivity connectivity = Connectivity::ring;
    double J = -5.0;
    CouplingKind delta_kind = CouplingKind::heisenberg_like;
    double delta = 0.15;
    CouplingKind omega_kind = CouplingKind::heisenberg_like;
    double omega = 0.15;
    TermFlags flags{};
};

inline HamiltonianSpec make_spec(const SpecOptions& o, std::uint64_t seed) {
    const BathTopology topo = build_topology(o.connectivity, o.n_bath);
    auto central = sample_couplings(o.delta_kind, o.delta, central_bath_pairs(o.n_bath), seed);
    auto bath = sample_couplings(o.omega_kind, o.omega, bath_pairs(topo), seed ^ 0x9e3779b97f4a7c15ULL);
    return build_spec(o.J, topo, std::move(central), std::move(bath), o.flags);
}

} // namespace decohere::testing
