#include "decohere/errors.hpp"
#include "decohere/model.hpp"
#include "decohere/oracle.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

using namespace decohere;

namespace {

std::vector<int> degrees(const BathTopology& t) {
    std::vector<int> d(static_cast<std::size_t>(t.n_bath), 0);
    for (const auto& [i, j] : t.edges) {
        ++d[static_cast<std::size_t>(i - 1)];
        ++d[static_cast<std::size_t>(j - 1)];
    }
    return d;
}

int max_graph_distance(const BathTopology& t) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(t.n_bath));
    for (const auto& [i, j] : t.edges) {
        adj[static_cast<std::size_t>(i - 1)].push_back(j - 1);
        adj[static_cast<std::size_t>(j - 1)].push_back(i - 1);
    }
    int best = 0;
    for (int s = 0; s < t.n_bath; ++s) {
        std::vector<int> dist(static_cast<std::size_t>(t.n_bath), -1);
        std::queue<int> q;
        dist[static_cast<std::size_t>(s)] = 0;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int w : adj[static_cast<std::size_t>(u)]) {
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                    q.push(w);
                }
            }
        }
        best = std::max(best, *std::max_element(dist.begin(), dist.end()));
    }
    return best;
}

} // namespace

TEST_CASE("topology edge counts and degrees at N = 16") {
    struct Case {
        Connectivity c;
        std::size_t edges;
        int k;
    };
    for (const Case& cs : {Case{Connectivity::none, 0, 0}, Case{Connectivity::ring, 16, 2},
                           Case{Connectivity::square, 32, 4},
                           Case{Connectivity::triangular, 48, 6},
                           Case{Connectivity::complete, 120, 15}}) {
        const auto t = build_topology(cs.c, 16);
        CHECK(t.edges.size() == cs.edges);
        CHECK(degree(cs.c, 16) == cs.k);
        for (int d : degrees(t)) {
            CHECK(d == cs.k);
        }
        CHECK(std::is_sorted(t.edges.begin(), t.edges.end()));
        for (const auto& [i, j] : t.edges) {
            CHECK(i < j);
        }
    }
}

TEST_CASE("ring distance") {
    CHECK(max_graph_distance(build_topology(Connectivity::ring, 16)) == 8);
}

TEST_CASE("incompatible sizes are configuration errors") {
    CHECK_THROWS_AS(build_topology(Connectivity::square, 15), ConfigError);
    CHECK_THROWS_AS(build_topology(Connectivity::triangular, 4), ConfigError);
    CHECK_THROWS_AS(build_topology(Connectivity::ring, 2), ConfigError);
    CHECK_THROWS_AS(parse_connectivity("hexagonal", 16), ConfigError);
}

TEST_CASE("connectivity parsing accepts names and degrees") {
    CHECK(parse_connectivity("ring", 16) == Connectivity::ring);
    CHECK(parse_connectivity("2", 16) == Connectivity::ring);
    CHECK(parse_connectivity("15", 16) == Connectivity::complete);
    CHECK(parse_connectivity("6", 16) == Connectivity::triangular);
    CHECK(parse_connectivity("0", 16) == Connectivity::none);
}

TEST_CASE("coupling samplers") {
    SUBCASE("isotropic fixed") {
        const auto t = sample_couplings(CouplingKind::isotropic_fixed, -0.075,
                                        central_bath_pairs(16), 123);
        CHECK(t.pairs.size() == 32);
        for (const auto& v : t.values) {
            CHECK(v[0] == -0.075);
            CHECK(v[1] == -0.075);
            CHECK(v[2] == -0.075);
        }
    }
    SUBCASE("zero scale") {
        const auto t = sample_couplings(CouplingKind::heisenberg_like, 0.0, central_bath_pairs(4), 9);
        for (const auto& v : t.values) {
            CHECK(v == std::array<double, 3>{0.0, 0.0, 0.0});
        }
    }
    SUBCASE("heisenberg-like draws are uniform on [-scale, scale]") {
        const auto topo = build_topology(Connectivity::complete, 90);
        const auto t = sample_couplings(CouplingKind::heisenberg_like, 0.15, bath_pairs(topo), 42);
        std::vector<double> x;
        for (const auto& v : t.values) {
            x.insert(x.end(), v.begin(), v.end());
        }
        REQUIRE(x.size() >= 10000);
        double mean = 0.0;
        for (double e : x) {
            CHECK(std::abs(e) <= 0.15);
            mean += e;
        }
        mean /= static_cast<double>(x.size());
        CHECK(std::abs(mean) < 0.005);
        // Kolmogorov-Smirnov against U(-0.15, 0.15), 1% critical value
        std::sort(x.begin(), x.end());
        const double n = static_cast<double>(x.size());
        double d = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double cdf = (x[i] + 0.15) / 0.3;
            d = std::max({d, std::abs(cdf - static_cast<double>(i) / n),
                          std::abs(static_cast<double>(i + 1) / n - cdf)});
        }
        CHECK(d < 1.63 / std::sqrt(n));
    }
    SUBCASE("random isotropic shares one value per pair") {
        const auto t = sample_couplings(CouplingKind::random_isotropic, 0.2, central_bath_pairs(8), 5);
        for (const auto& v : t.values) {
            CHECK(v[0] == v[1]);
            CHECK(v[1] == v[2]);
            CHECK(v[0] >= 0.0);
            CHECK(v[0] <= 0.2);
        }
    }
    SUBCASE("same seed reproduces the table bit for bit") {
        const auto a = sample_couplings(CouplingKind::heisenberg_like, 0.3, central_bath_pairs(6), 99);
        const auto b = sample_couplings(CouplingKind::heisenberg_like, 0.3, central_bath_pairs(6), 99);
        CHECK(a.values == b.values);
        const auto c = sample_couplings(CouplingKind::heisenberg_like, 0.3, central_bath_pairs(6), 98);
        CHECK(a.values != c.values);
    }
}

TEST_CASE("term counts follow the flags") {
    testing::SpecOptions o;
    o.n_bath = 4;
    o.connectivity = Connectivity::ring;
    auto spec = testing::make_spec(o, 1);
    CHECK(spec.terms().size() == 3 + 3 * 8 + 3 * 4);
    CHECK(spec.with_flags({true, false, false}).terms().size() == 3);
    CHECK(spec.with_flags({false, false, false}).terms().empty());
    CHECK(spec.bath_terms().size() == 12);
}

TEST_CASE("central-only spec densifies to H_c") {
    testing::SpecOptions o;
    o.n_bath = 1;
    o.connectivity = Connectivity::none;
    o.flags = {true, false, false};
    const auto spec = testing::make_spec(o, 1);
    const auto dense = densify(spec);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense.matrix);
    // two copies (bath spin up / down) of {-J/4 x3, 3J/4}
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 8);
    CHECK(ev[0] == doctest::Approx(-3.75));
    CHECK(ev[1] == doctest::Approx(-3.75));
    for (std::size_t i = 2; i < 8; ++i) {
        CHECK(ev[i] == doctest::Approx(1.25));
    }
}

TEST_CASE("build_spec rejects tables that do not cover the pairs") {
    const auto topo = build_topology(Connectivity::ring, 4);
    auto central = sample_couplings(CouplingKind::isotropic_fixed, 0.1, central_bath_pairs(3), 1);
    auto bath = sample_couplings(CouplingKind::isotropic_fixed, 0.1, bath_pairs(topo), 1);
    CHECK_THROWS_AS(build_spec(-5.0, topo, central, bath), ConfigError);
    auto central_ok = sample_couplings(CouplingKind::isotropic_fixed, 0.1, central_bath_pairs(4), 1);
    auto bath_bad = sample_couplings(CouplingKind::isotropic_fixed, 0.1,
                                     bath_pairs(build_topology(Connectivity::complete, 4)), 1);
    CHECK_THROWS_AS(build_spec(-5.0, topo, central_ok, bath_bad), ConfigError);
}

TEST_CASE("commutation structure of the isotropic model") {
    testing::SpecOptions o;
    o.n_bath = 4;
    o.connectivity = Connectivity::ring;
    o.delta_kind = CouplingKind::isotropic_fixed;
    o.delta = -0.075;
    o.omega_kind = CouplingKind::isotropic_fixed;
    o.omega = 0.15;
    const auto spec = testing::make_spec(o, 1);
    const auto hc = densify(spec.with_flags({true, false, false}));
    const auto hce = densify(spec.with_flags({false, true, false}));
    const auto he = densify(spec.with_flags({false, false, true}));
    CHECK(coupling_commutes_with_central(spec));
    CHECK(commutator_norm(hc, hce) < 1e-12);
    CHECK(commutator_norm(hce, he) < 1e-12);

    o.delta_kind = CouplingKind::heisenberg_like;
    o.delta = 0.15;
    const auto aniso = testing::make_spec(o, 7);
    CHECK_FALSE(coupling_commutes_with_central(aniso));
    CHECK(commutator_norm(densify(aniso.with_flags({true, false, false})),
                          densify(aniso.with_flags({false, true, false}))) > 1e-3);
}

TEST_CASE("full spec has a real spectrum") {
    testing::SpecOptions o;
    const auto dense = densify(testing::make_spec(o, 4));
    CHECK(dense.hermiticity_error() < 1e-14);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(dense.matrix);
    CHECK(es.eigenvalues().imag().cwiseAbs().maxCoeff() < 1e-12);
}
