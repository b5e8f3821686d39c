#pragma once

#include "decohere/hilbert.hpp"

#include <array>
#include <cstdint>
#include <string_view>

namespace decohere {

enum class RandomStateMode : std::uint8_t {
    haar,        // independent complex Gaussians, normalized
    random_phase // equal magnitudes, uniform random phases
};

/// Random superposition of all 2^n_bath bath basis states; a typical state of
/// the infinite-temperature ensemble. Deterministic per seed.
StateVector random_bath_state(int n_bath, std::uint64_t seed,
                              RandomStateMode mode = RandomStateMode::haar);

enum class CentralState : std::uint8_t { up_up, up_down, down_up, down_down, singlet, triplet_zero };

std::string_view to_string(CentralState s);
CentralState parse_central_state(std::string_view text);

/// Amplitudes of a central state over the product basis, index c = bit(S1) + 2 bit(S2).
std::array<cplx, 4> central_product_amplitudes(CentralState s);

/// |central> (x) |bath> on the full 2 + N spin space.
StateVector compose_initial(CentralState central, const StateVector& bath);

} // namespace decohere
