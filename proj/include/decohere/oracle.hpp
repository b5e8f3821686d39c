#pragma once

// Small-system reference computations. Nothing here shares code with the
// matrix-free kernels: operators are assembled entry by entry from explicit
// 2x2 spin matrices and propagated by dense eigendecomposition.

#include "decohere/hilbert.hpp"

#include <Eigen/Dense>

#include <array>
#include <span>
#include <vector>

namespace decohere {

struct HamiltonianSpec;

inline constexpr std::size_t kMaxDenseDim = std::size_t{1} << 12;

struct DenseOperator {
    unsigned n_spins = 0;
    Eigen::MatrixXcd matrix;

    std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
    StateVector apply(const StateVector& v) const;
    double hermiticity_error() const;
};

DenseOperator densify(std::span<const TwoSpinTerm> terms, unsigned n_spins,
                      Layout layout = Layout::full);
DenseOperator densify(const HamiltonianSpec& spec);
/// H_e alone on the bath-only space.
DenseOperator densify_bath(const HamiltonianSpec& spec);

/// Cached eigendecomposition for repeated exp(-i H t) applications.
class DenseEvolver {
  public:
    explicit DenseEvolver(const Eigen::MatrixXcd& hermitian);

    Eigen::VectorXcd evolve(const Eigen::VectorXcd& v, double t) const;
    const Eigen::VectorXd& eigenvalues() const { return values_; }

  private:
    Eigen::VectorXd values_;
    Eigen::MatrixXcd vectors_;
};

StateVector dense_evolve(const DenseOperator& op, const StateVector& state, double t);

/// Frobenius norm of ab - ba.
double commutator_norm(const DenseOperator& a, const DenseOperator& b);

/// Loschmidt echo from bath-space evolution alone, valid when [H_c, H_ce] = 0.
///
/// The singlet carries no coupling ((S1 + S2)|S> = 0), so its bath vector evolves
/// under H_e only. The triplet coupling -sum_j Delta_j L . I_j (L the spin-1
/// operators on T1, T0, T-1) mixes the degenerate triplets, so that sector is
/// evolved as one 3 * 2^N block. The echo is the squared norm of the bath vector
/// left after projecting onto the freely evolving central state:
///   L(t) = || |a_S|^2 phi_S(t) + sum_T conj(a_T) chi_T(t) ||^2
/// which reduces to sum_kl |a_k|^2 |a_l|^2 <phi_l(t)|phi_k(t)> when each block
/// keeps its central label.
///
/// a: central amplitudes in the eigenbasis (T1, S, T0, T-1).
/// Throws UsageError when the central-bath coupling is not of the commuting form.
std::vector<double> echo_commuting(const std::array<cplx, 4>& a, const StateVector& bath_state0,
                                   const HamiltonianSpec& spec, std::span<const double> t_grid);

} // namespace decohere
