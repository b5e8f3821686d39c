#include "decohere/initstate.hpp"

#include "decohere/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace decohere {

StateVector random_bath_state(int n_bath, std::uint64_t seed, RandomStateMode mode) {
    if (n_bath < 1) {
        throw UsageError("random_bath_state: n_bath must be >= 1");
    }
    StateVector v(static_cast<unsigned>(n_bath));
    std::mt19937_64 rng(seed);
    if (mode == RandomStateMode::haar) {
        std::normal_distribution<double> g(0.0, 1.0);
        for (auto& a : v.amplitudes()) {
            const double re = g(rng);
            const double im = g(rng);
            a = {re, im};
        }
    } else {
        std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
        for (auto& a : v.amplitudes()) {
            a = std::polar(1.0, phase(rng));
        }
    }
    v.normalize();
    return v;
}

std::string_view to_string(CentralState s) {
    switch (s) {
    case CentralState::up_up:
        return "up_up";
    case CentralState::up_down:
        return "up_down";
    case CentralState::down_up:
        return "down_up";
    case CentralState::down_down:
        return "down_down";
    case CentralState::singlet:
        return "singlet";
    case CentralState::triplet_zero:
        return "triplet_zero";
    }
    return "?";
}

CentralState parse_central_state(std::string_view text) {
    for (auto s : {CentralState::up_up, CentralState::up_down, CentralState::down_up,
                   CentralState::down_down, CentralState::singlet, CentralState::triplet_zero}) {
        if (text == to_string(s)) {
            return s;
        }
    }
    throw ConfigError("unknown central state '" + std::string(text) + "'");
}

std::array<cplx, 4> central_product_amplitudes(CentralState s) {
    // c = bit(S1) + 2 bit(S2); up = 0. |up,down> is c = 2, |down,up> is c = 1.
    const double r = 1.0 / std::numbers::sqrt2;
    switch (s) {
    case CentralState::up_up:
        return {1.0, 0.0, 0.0, 0.0};
    case CentralState::up_down:
        return {0.0, 0.0, 1.0, 0.0};
    case CentralState::down_up:
        return {0.0, 1.0, 0.0, 0.0};
    case CentralState::down_down:
        return {0.0, 0.0, 0.0, 1.0};
    case CentralState::singlet:
        return {0.0, -r, r, 0.0};
    case CentralState::triplet_zero:
        return {0.0, r, r, 0.0};
    }
    return {};
}

StateVector compose_initial(CentralState central, const StateVector& bath) {
    if (bath.n_spins() < 1 || bath.n_spins() > 28) {
        throw UsageError("compose_initial: bath must have between 1 and 28 spins");
    }
    const auto c = central_product_amplitudes(central);
    StateVector full(bath.n_spins() + 2);
    for (std::size_t b = 0; b < bath.dim(); ++b) {
        for (std::size_t k = 0; k < 4; ++k) {
            full[k + 4 * b] = c[k] * bath[b];
        }
    }
    return full;
}

} // namespace decohere
