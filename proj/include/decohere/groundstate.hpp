#pragma once

#include "decohere/hilbert.hpp"

#include <cstdint>

namespace decohere {

struct HamiltonianSpec;

enum class Reorthogonalization : std::uint8_t {
    full,     // every new Lanczos vector against the whole basis of the cycle
    selective // a full pass only when the overlap with the cycle's first vector exceeds sqrt(eps)
};

struct LanczosParams {
    int max_iterations = 6000; // total operator applications over all restarts
    double residual_tol = 1e-10;
    Reorthogonalization reorthogonalization = Reorthogonalization::full;
    std::uint64_t start_seed = 1;
    int krylov_dim = 60; // basis size per restart cycle
};

struct GroundState {
    double energy = 0.0;
    StateVector state;
    double residual = 0.0; // ||H psi - E psi||
    int iterations = 0;
    bool degenerate = false; // zero operator: every vector is a ground state
};

/// Lowest eigenpair of a bath-only operator by explicitly restarted Lanczos.
/// Throws ConvergenceError (with the best residual) after max_iterations.
GroundState ground_state(const SpinOperator& bath_op, const LanczosParams& params = {});

/// Ground state of the spec's H_e over the bath-only space.
GroundState bath_ground_state(const HamiltonianSpec& spec, const LanczosParams& params = {});

} // namespace decohere
