#pragma once

// Reduced density matrix of the central pair in the eigenbasis of H_c, ordered
//   |1> = |T1> = |up,up>
//   |2> = |S>  = (|up,down> - |down,up>) / sqrt2
//   |3> = |T0> = (|up,down> + |down,up>) / sqrt2
//   |4> = |T-1> = |down,down>
// so rho(1, 2) (0-based) is the singlet / triplet-zero coherence rho_23.

#include "decohere/hilbert.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace decohere {

class SpinOperator;
struct HamiltonianSpec;

class DensityMatrix4 {
  public:
    DensityMatrix4() = default;
    explicit DensityMatrix4(const std::array<std::array<cplx, 4>, 4>& m) : m_(m) {}

    static DensityMatrix4 diagonal(double p1, double p2, double p3, double p4);
    /// |psi><psi| for eigenbasis amplitudes psi.
    static DensityMatrix4 pure(const std::array<cplx, 4>& psi);

    cplx& operator()(int k, int l) { return m_[k][l]; }
    const cplx& operator()(int k, int l) const { return m_[k][l]; }

    cplx trace() const;
    double hermiticity_error() const;
    double min_eigenvalue() const;

    DensityMatrix4 operator*(const DensityMatrix4& other) const;

  private:
    std::array<std::array<cplx, 4>, 4> m_{};
};

/// Eigenbasis amplitudes <k|c> of the four product states c = bit(S1) + 2 bit(S2).
const std::array<std::array<double, 4>, 4>& eigenbasis_transform();

/// Product-basis amplitudes to eigenbasis amplitudes a_k = sum_c <k|c> psi_c.
std::array<cplx, 4> to_eigenbasis(const std::array<cplx, 4>& product_amplitudes);

/// Product-basis 4x4 matrix to eigenbasis.
DensityMatrix4 to_eigenbasis(const std::array<std::array<cplx, 4>, 4>& product);

/// Partial trace over the bath of a normalized full-space state.
DensityMatrix4 reduce(const StateVector& full_state);

/// 1 - Tr rho^2
double quadratic_entropy(const DensityMatrix4& rho);

/// Re Tr(rho rho0); throws NumericError if the imaginary part exceeds 1e-10.
double loschmidt_echo(const DensityMatrix4& rho, const DensityMatrix4& rho0);

/// <psi|H|psi> using scratch as the H|psi> buffer.
double energy_expectation(const StateVector& state, const SpinOperator& op, StateVector& scratch);
double energy_expectation(const StateVector& state, const HamiltonianSpec& spec);

struct SeriesRecord {
    double t = 0.0;
    DensityMatrix4 rho;
    double entropy = 0.0;
    double echo = 0.0;
    double energy = 0.0;
};

struct TimeSeries {
    std::vector<SeriesRecord> records;
    std::uint64_t realization_seed = 0;
    int realization = 0;
};

} // namespace decohere
