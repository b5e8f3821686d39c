#include "decohere/model.hpp"

#include "decohere/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <set>
#include <string>

namespace decohere {

std::string_view to_string(Connectivity c) {
    switch (c) {
    case Connectivity::none:
        return "none";
    case Connectivity::ring:
        return "ring";
    case Connectivity::square:
        return "square";
    case Connectivity::triangular:
        return "triangular";
    case Connectivity::complete:
        return "complete";
    }
    return "?";
}

Connectivity parse_connectivity(std::string_view text, int n_bath) {
    if (text == "none" || text == "K0") {
        return Connectivity::none;
    }
    if (text == "ring") {
        return Connectivity::ring;
    }
    if (text == "square") {
        return Connectivity::square;
    }
    if (text == "triangular") {
        return Connectivity::triangular;
    }
    if (text == "complete" || text == "glass" || text == "N-1") {
        return Connectivity::complete;
    }
    int k = -1;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
    if (ec == std::errc{} && ptr == text.data() + text.size()) {
        if (k == 0) {
            return Connectivity::none;
        }
        if (k == n_bath - 1) {
            return Connectivity::complete;
        }
        if (k == 2) {
            return Connectivity::ring;
        }
        if (k == 4) {
            return Connectivity::square;
        }
        if (k == 6) {
            return Connectivity::triangular;
        }
    }
    throw ConfigError("unknown connectivity '" + std::string(text) + "'");
}

int degree(Connectivity c, int n_bath) {
    switch (c) {
    case Connectivity::none:
        return 0;
    case Connectivity::ring:
        return 2;
    case Connectivity::square:
        return 4;
    case Connectivity::triangular:
        return 6;
    case Connectivity::complete:
        return n_bath - 1;
    }
    return 0;
}

namespace {

int lattice_side(int n_bath, Connectivity c) {
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_bath))));
    if (side * side != n_bath || side < 3) {
        throw ConfigError(std::string(to_string(c)) +
                          " lattice needs n_bath = L*L with L >= 3, got " +
                          std::to_string(n_bath));
    }
    return side;
}

} // namespace

BathTopology build_topology(Connectivity connectivity, int n_bath, Boundary boundary) {
    if (n_bath < 1) {
        throw ConfigError("n_bath must be >= 1");
    }
    BathTopology topo{n_bath, connectivity, {}};
    std::set<std::pair<int, int>> edges;
    auto add = [&](int i, int j) {
        if (i == j) {
            return;
        }
        edges.insert({std::min(i, j), std::max(i, j)});
    };

    switch (connectivity) {
    case Connectivity::none:
        break;
    case Connectivity::ring:
        if (n_bath < 3) {
            throw ConfigError("ring needs n_bath >= 3");
        }
        for (int i = 1; i < n_bath; ++i) {
            add(i, i + 1);
        }
        if (boundary == Boundary::periodic) {
            add(n_bath, 1);
        }
        break;
    case Connectivity::square:
    case Connectivity::triangular: {
        const int side = lattice_side(n_bath, connectivity);
        const bool wrap = boundary == Boundary::periodic;
        auto site = [side](int x, int y) { return 1 + x + side * y; };
        for (int y = 0; y < side; ++y) {
            for (int x = 0; x < side; ++x) {
                const bool has_right = wrap || x + 1 < side;
                const bool has_up = wrap || y + 1 < side;
                const int xr = (x + 1) % side;
                const int yu = (y + 1) % side;
                if (has_right) {
                    add(site(x, y), site(xr, y));
                }
                if (has_up) {
                    add(site(x, y), site(x, yu));
                }
                if (connectivity == Connectivity::triangular && has_right && has_up) {
                    add(site(x, y), site(xr, yu));
                }
            }
        }
        break;
    }
    case Connectivity::complete:
        if (n_bath < 2) {
            throw ConfigError("complete graph needs n_bath >= 2");
        }
        for (int i = 1; i <= n_bath; ++i) {
            for (int j = i + 1; j <= n_bath; ++j) {
                add(i, j);
            }
        }
        break;
    }
    topo.edges.assign(edges.begin(), edges.end());
    return topo;
}

std::string_view to_string(CouplingKind k) {
    switch (k) {
    case CouplingKind::isotropic_fixed:
        return "isotropic";
    case CouplingKind::heisenberg_like:
        return "heisenberg_like";
    case CouplingKind::random_isotropic:
        return "random_isotropic";
    }
    return "?";
}

CouplingKind parse_coupling_kind(std::string_view text) {
    if (text == "isotropic" || text == "isotropic_fixed" || text == "heisenberg") {
        return CouplingKind::isotropic_fixed;
    }
    if (text == "heisenberg_like" || text == "anisotropic") {
        return CouplingKind::heisenberg_like;
    }
    if (text == "random_isotropic") {
        return CouplingKind::random_isotropic;
    }
    throw ConfigError("unknown coupling kind '" + std::string(text) + "'");
}

std::vector<SitePair> central_bath_pairs(int n_bath) {
    std::vector<SitePair> pairs;
    pairs.reserve(2 * static_cast<std::size_t>(n_bath));
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= n_bath; ++j) {
            pairs.push_back({SpinSite::central(i), SpinSite::bath(j)});
        }
    }
    return pairs;
}

std::vector<SitePair> bath_pairs(const BathTopology& topology) {
    std::vector<SitePair> pairs;
    pairs.reserve(topology.edges.size());
    for (const auto& [i, j] : topology.edges) {
        pairs.push_back({SpinSite::bath(i), SpinSite::bath(j)});
    }
    return pairs;
}

CouplingTable sample_couplings(CouplingKind kind, double scale, std::vector<SitePair> pairs,
                               std::uint64_t seed) {
    if (!std::isfinite(scale)) {
        throw ConfigError("coupling scale must be finite");
    }
    if (kind != CouplingKind::isotropic_fixed && scale < 0.0) {
        throw ConfigError("random coupling scale must be >= 0");
    }
    CouplingTable table{kind, scale, std::move(pairs), {}};
    table.values.resize(table.pairs.size());
    std::mt19937_64 rng(seed);
    switch (kind) {
    case CouplingKind::isotropic_fixed:
        std::fill(table.values.begin(), table.values.end(), std::array{scale, scale, scale});
        break;
    case CouplingKind::heisenberg_like: {
        std::uniform_real_distribution<double> u(-scale, scale);
        for (auto& v : table.values) {
            for (double& c : v) {
                c = scale == 0.0 ? 0.0 : u(rng);
            }
        }
        break;
    }
    case CouplingKind::random_isotropic: {
        std::uniform_real_distribution<double> u(0.0, scale);
        for (auto& v : table.values) {
            const double c = scale == 0.0 ? 0.0 : u(rng);
            v = {c, c, c};
        }
        break;
    }
    }
    return table;
}

std::vector<TwoSpinTerm> HamiltonianSpec::terms() const {
    std::vector<TwoSpinTerm> out;
    if (flags.central) {
        for (Axis ax : kAxes) {
            out.push_back({SpinSite::central(1), SpinSite::central(2), ax, J});
        }
    }
    if (flags.coupling) {
        for (std::size_t p = 0; p < central_bath.pairs.size(); ++p) {
            for (Axis ax : kAxes) {
                out.push_back({central_bath.pairs[p].a, central_bath.pairs[p].b, ax,
                               central_bath.value(p, ax)});
            }
        }
    }
    if (flags.bath) {
        auto bath = bath_terms();
        out.insert(out.end(), bath.begin(), bath.end());
    }
    return out;
}

std::vector<TwoSpinTerm> HamiltonianSpec::bath_terms() const {
    std::vector<TwoSpinTerm> out;
    out.reserve(3 * bath_bath.pairs.size());
    for (std::size_t p = 0; p < bath_bath.pairs.size(); ++p) {
        for (Axis ax : kAxes) {
            out.push_back(
                {bath_bath.pairs[p].a, bath_bath.pairs[p].b, ax, bath_bath.value(p, ax)});
        }
    }
    return out;
}

HamiltonianSpec build_spec(double J, const BathTopology& topology, CouplingTable central_table,
                           CouplingTable bath_table, TermFlags flags) {
    if (!std::isfinite(J)) {
        throw ConfigError("J must be finite");
    }
    if (central_table.pairs != central_bath_pairs(topology.n_bath)) {
        throw ConfigError("central-bath table does not cover the 2N central-bath pairs");
    }
    if (bath_table.pairs != bath_pairs(topology)) {
        throw ConfigError("bath table does not cover the topology's edges");
    }
    if (central_table.values.size() != central_table.pairs.size() ||
        bath_table.values.size() != bath_table.pairs.size()) {
        throw ConfigError("coupling table has mismatched value count");
    }
    return HamiltonianSpec{topology.n_bath, J, std::move(central_table), std::move(bath_table),
                           flags};
}

SpinOperator make_operator(const HamiltonianSpec& spec) {
    const auto t = spec.terms();
    return SpinOperator(spec.n_spins(), t, Layout::full);
}

SpinOperator make_bath_operator(const HamiltonianSpec& spec) {
    const auto t = spec.bath_terms();
    return SpinOperator(static_cast<unsigned>(spec.n_bath), t, Layout::bath_only);
}

StateVector apply_hamiltonian(const HamiltonianSpec& spec, const StateVector& input) {
    if (input.n_spins() != spec.n_spins()) {
        throw UsageError("apply_hamiltonian: state does not match the spec's spin count");
    }
    const auto t = spec.terms();
    return apply_hamiltonian(t, input, Layout::full);
}

bool coupling_commutes_with_central(const HamiltonianSpec& spec) {
    if (!spec.flags.coupling) {
        return true;
    }
    const auto& table = spec.central_bath;
    const auto n = static_cast<std::size_t>(spec.n_bath);
    if (table.pairs.size() != 2 * n) {
        return false;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const auto& v1 = table.values[j];
        const auto& v2 = table.values[n + j];
        if (v1[0] != v1[1] || v1[1] != v1[2] || v1 != v2) {
            return false;
        }
    }
    return true;
}

} // namespace decohere
