#pragma once

// Bath topologies, seeded coupling tables and Hamiltonian assembly for
//   H = H_c + H_ce + H_e
//   H_c  = -J S1.S2
//   H_ce = -sum_{i=1,2} sum_{j=1..N} sum_a Delta_{ij}^a S_i^a I_j^a
//   H_e  = -sum_{(i,j) in edges} sum_a Omega_{ij}^a I_i^a I_j^a

#include "decohere/hilbert.hpp"

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace decohere {

enum class Connectivity : std::uint8_t { none, ring, square, triangular, complete };

enum class Boundary : std::uint8_t { periodic, open };

std::string_view to_string(Connectivity c);
/// Accepts names (none, ring, square, triangular, complete) or the degree K
/// as a number (0, 2, 4, 6, N-1).
Connectivity parse_connectivity(std::string_view text, int n_bath);
/// Nominal number of neighbours K for the connectivity.
int degree(Connectivity c, int n_bath);

struct BathTopology {
    int n_bath = 0;
    Connectivity connectivity = Connectivity::none;
    std::vector<std::pair<int, int>> edges; // 1-based bath sites, i < j, sorted
};

/// Square and triangular lattices need n_bath = L*L with L >= 3 (the side length
/// keeps periodic neighbours distinct). The triangular lattice is the square
/// lattice plus the (x+1, y+1) diagonal of every plaquette.
BathTopology build_topology(Connectivity connectivity, int n_bath,
                            Boundary boundary = Boundary::periodic);

enum class CouplingKind : std::uint8_t {
    isotropic_fixed, // every (pair, axis) equals scale
    heisenberg_like, // every (pair, axis) independent uniform in [-scale, scale]
    random_isotropic // per pair one uniform value in [0, scale] shared by the three axes
};

std::string_view to_string(CouplingKind k);
CouplingKind parse_coupling_kind(std::string_view text);

struct SitePair {
    SpinSite a;
    SpinSite b;
    friend bool operator==(const SitePair&, const SitePair&) = default;
};

struct CouplingTable {
    CouplingKind kind = CouplingKind::isotropic_fixed;
    double scale = 0.0;
    std::vector<SitePair> pairs;
    std::vector<std::array<double, 3>> values; // (x, y, z) per pair

    double value(std::size_t pair, Axis axis) const {
        return values[pair][static_cast<int>(axis)];
    }
};

/// Every central spin paired with every bath spin, ordered (S1,I1..IN), (S2,I1..IN).
std::vector<SitePair> central_bath_pairs(int n_bath);
std::vector<SitePair> bath_pairs(const BathTopology& topology);

/// Draw order is fixed: pairs in the given order, axes x, y, z within a pair.
CouplingTable sample_couplings(CouplingKind kind, double scale, std::vector<SitePair> pairs,
                               std::uint64_t seed);

struct TermFlags {
    bool central = true;  // H_c
    bool coupling = true; // H_ce
    bool bath = true;     // H_e
};

struct HamiltonianSpec {
    int n_bath = 0;
    double J = 0.0;
    CouplingTable central_bath;
    CouplingTable bath_bath;
    TermFlags flags;

    unsigned n_spins() const { return static_cast<unsigned>(n_bath) + 2; }

    /// Expansion into two-spin terms, filtered by flags: 3 for H_c, 3 per
    /// central-bath pair, 3 per bath edge.
    std::vector<TwoSpinTerm> terms() const;
    /// Only the bath-bath terms.
    std::vector<TwoSpinTerm> bath_terms() const;

    HamiltonianSpec with_flags(TermFlags f) const {
        HamiltonianSpec copy = *this;
        copy.flags = f;
        return copy;
    }
};

/// Throws ConfigError unless central_table covers exactly the 2N central-bath
/// pairs and bath_table exactly the topology's edges.
HamiltonianSpec build_spec(double J, const BathTopology& topology, CouplingTable central_table,
                           CouplingTable bath_table, TermFlags flags = {});

/// Operator over the full 2 + N spin space.
SpinOperator make_operator(const HamiltonianSpec& spec);
/// H_e alone over the bath-only space.
SpinOperator make_bath_operator(const HamiltonianSpec& spec);

StateVector apply_hamiltonian(const HamiltonianSpec& spec, const StateVector& input);

/// True if both central spins couple to each bath spin through one shared
/// isotropic constant, the condition for [H_c, H_ce] = 0.
bool coupling_commutes_with_central(const HamiltonianSpec& spec);

} // namespace decohere
