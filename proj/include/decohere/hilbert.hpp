#pragma once

// Bit-encoded spin-1/2 Hilbert space.
//
// Basis index layout for the full system of 2 central + N bath spins:
//   bit 0      central spin S1
//   bit 1      central spin S2
//   bit 1 + j  bath spin I_j, j = 1..N
// A bit value of 0 is spin up, 1 is spin down. The central spins occupy the two
// lowest bits, so amplitude index = c + 4 * b with c the central configuration
// and b the bath configuration; tracing out the bath is a plain index split.
//
// A bath-only space (used for the bath ground state) puts I_j at bit j - 1.

#include "decohere/kernels.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace decohere {

using cplx = std::complex<double>;

enum class SiteKind : std::uint8_t { central, bath };

enum class Layout : std::uint8_t { full, bath_only };

struct SpinSite {
    SiteKind kind;
    int index; // 1..2 for central, 1..N for bath

    static constexpr SpinSite central(int i) { return {SiteKind::central, i}; }
    static constexpr SpinSite bath(int j) { return {SiteKind::bath, j}; }

    unsigned bit(Layout layout = Layout::full) const;

    friend bool operator==(const SpinSite&, const SpinSite&) = default;
    friend auto operator<=>(const SpinSite&, const SpinSite&) = default;
};

enum class Axis : std::uint8_t { x, y, z };

inline constexpr Axis kAxes[3] = {Axis::x, Axis::y, Axis::z};

/// -coefficient * S_a^axis S_b^axis with spin-1/2 operators S = sigma / 2.
struct TwoSpinTerm {
    SpinSite site_a;
    SpinSite site_b;
    Axis axis;
    double coefficient;
};

class StateVector {
  public:
    StateVector() = default;
    /// Zero vector over n_spins spins.
    explicit StateVector(unsigned n_spins);
    StateVector(unsigned n_spins, std::vector<cplx> amplitudes);

    static StateVector basis(unsigned n_spins, std::size_t index);

    unsigned n_spins() const { return n_spins_; }
    std::size_t dim() const { return amps_.size(); }

    cplx* data() { return amps_.data(); }
    const cplx* data() const { return amps_.data(); }
    std::span<cplx> amplitudes() { return amps_; }
    std::span<const cplx> amplitudes() const { return amps_; }

    cplx& operator[](std::size_t i) { return amps_[i]; }
    const cplx& operator[](std::size_t i) const { return amps_[i]; }

    double norm() const;
    /// Scales to unit norm; throws NumericError on a zero or non-finite vector.
    void normalize();
    void set_zero();
    bool all_finite() const;

  private:
    unsigned n_spins_ = 0;
    std::vector<cplx> amps_;
};

/// <a|b>, conjugating a.
cplx inner_product(const StateVector& a, const StateVector& b);

/// accumulator += (-coefficient S_a^axis S_b^axis) |input>. Reference kernel,
/// one term at a time.
void apply_term(const TwoSpinTerm& term, const StateVector& input, StateVector& accumulator,
                Layout layout = Layout::full);

/// Real symmetric operator assembled from two-spin terms: a diagonal array for
/// all z-z contributions plus one bit-flip pass per coupled pair that merges its
/// x-x and y-y parts. Immutable after construction, so one instance can be shared
/// by many threads.
class SpinOperator {
  public:
    struct PairFlip {
        unsigned bit_a; // bit_a < bit_b
        unsigned bit_b;
        double c_eq; // amplitude picked up when the two bits agree
        double c_ne; // ... and when they differ
    };

    SpinOperator() = default;
    SpinOperator(unsigned n_spins, std::span<const TwoSpinTerm> terms,
                 Layout layout = Layout::full);

    unsigned n_spins() const { return n_spins_; }
    std::size_t dim() const { return std::size_t{1} << n_spins_; }
    bool is_zero() const { return zero_; }
    std::span<const PairFlip> flips() const { return flips_; }
    std::span<const double> diagonal() const { return diag_; }

    /// out = H in.
    void apply(const StateVector& in, StateVector& out) const;
    /// out_block[i - begin] = (H in)[i] for i in [begin, end); begin and end even.
    void apply_range(const cplx* in, cplx* out_block, std::size_t begin, std::size_t end,
                     const kernels::KernelTable& k) const;

    /// Upper bound on the spectral radius: max|diag| + sum over flips of max(|c_eq|, |c_ne|).
    double norm_bound() const;

    /// Amplitude block size used by blocked drivers.
    static constexpr std::size_t kBlock = 4096;

  private:
    unsigned n_spins_ = 0;
    bool zero_ = true;
    std::vector<double> diag_;
    std::vector<PairFlip> flips_;
};

/// H |input> for an arbitrary term list (fused operator path).
StateVector apply_hamiltonian(std::span<const TwoSpinTerm> terms, const StateVector& input,
                              Layout layout = Layout::full);

} // namespace decohere
