#pragma once

// Cross-checks of the matrix-free pipeline against the dense reference on
// small systems. Each check reports its worst error next to a pinned tolerance.

#include <cstdint>
#include <string>
#include <vector>

namespace decohere {

struct OracleCheck {
    std::string name;
    double error = 0.0;
    double tolerance = 0.0;
    std::string detail;

    bool passed() const { return error < tolerance; }
};

/// Matrix-free apply vs dense matrix action: spec_count seeded specs with
/// n_bath cycling through 1..max_bath, vectors_per_spec random vectors each.
OracleCheck check_apply_vs_dense(int spec_count = 20, int vectors_per_spec = 50, int max_bath = 6,
                                 std::uint64_t seed = 1);

/// One Chebyshev step of length t vs dense eigendecomposition.
OracleCheck check_step_vs_dense(int n_bath = 4, double t = 1.0, std::uint64_t seed = 2);

/// Batched trajectory vs dense evolution at every grid point.
OracleCheck check_trajectory_vs_dense(int n_bath = 6, double t_max = 10.0, int samples = 51,
                                      std::uint64_t seed = 3);

/// Full-space Loschmidt echo vs the bath-block reference for isotropic coupling.
OracleCheck check_echo_vs_block(int n_bath = 5, double t_max = 20.0, int samples = 81,
                                std::uint64_t seed = 4);

/// Lanczos ground-state energy vs the dense minimum eigenvalue of H_e.
OracleCheck check_ground_state_vs_dense(int n_bath = 8, std::uint64_t seed = 5);

std::vector<OracleCheck> run_oracle_battery();

} // namespace decohere
