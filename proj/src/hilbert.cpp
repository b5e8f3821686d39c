#include "decohere/hilbert.hpp"

#include "decohere/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <utility>

namespace decohere {

unsigned SpinSite::bit(Layout layout) const {
    if (kind == SiteKind::central) {
        if (layout == Layout::bath_only) {
            throw UsageError("central spin has no bit in a bath-only layout");
        }
        if (index < 1 || index > 2) {
            throw UsageError("central spin index must be 1 or 2");
        }
        return static_cast<unsigned>(index - 1);
    }
    if (index < 1) {
        throw UsageError("bath spin index must be >= 1");
    }
    return layout == Layout::full ? static_cast<unsigned>(index + 1)
                                  : static_cast<unsigned>(index - 1);
}

StateVector::StateVector(unsigned n_spins) : n_spins_(n_spins) {
    if (n_spins == 0 || n_spins > 30) {
        throw UsageError("state vector needs between 1 and 30 spins");
    }
    amps_.assign(std::size_t{1} << n_spins, cplx{});
}

StateVector::StateVector(unsigned n_spins, std::vector<cplx> amplitudes)
    : n_spins_(n_spins), amps_(std::move(amplitudes)) {
    if (n_spins == 0 || amps_.size() != (std::size_t{1} << n_spins)) {
        throw UsageError("amplitude count does not match 2^n_spins");
    }
}

StateVector StateVector::basis(unsigned n_spins, std::size_t index) {
    StateVector v(n_spins);
    if (index >= v.dim()) {
        throw UsageError("basis index out of range");
    }
    v[index] = 1.0;
    return v;
}

double StateVector::norm() const {
    return std::sqrt(kernels::active().norm_sq(amps_.data(), amps_.size()));
}

void StateVector::normalize() {
    const double n = norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw NumericError("cannot normalize a zero or non-finite state");
    }
    kernels::active().scale(cplx{1.0 / n, 0.0}, amps_.data(), amps_.size());
}

void StateVector::set_zero() { std::fill(amps_.begin(), amps_.end(), cplx{}); }

bool StateVector::all_finite() const {
    return std::all_of(amps_.begin(), amps_.end(), [](const cplx& a) {
        return std::isfinite(a.real()) && std::isfinite(a.imag());
    });
}

cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) {
        throw UsageError("inner_product: dimension mismatch");
    }
    return kernels::active().dot(a.data(), b.data(), a.dim());
}

void apply_term(const TwoSpinTerm& term, const StateVector& input, StateVector& accumulator,
                Layout layout) {
    if (input.dim() != accumulator.dim()) {
        throw UsageError("apply_term: dimension mismatch");
    }
    const unsigned a = term.site_a.bit(layout);
    const unsigned b = term.site_b.bit(layout);
    if (a == b) {
        throw UsageError("apply_term: both sites map to the same spin");
    }
    if (a >= input.n_spins() || b >= input.n_spins()) {
        throw UsageError("apply_term: site outside the state's spin range");
    }
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    // S^a S^b = sigma^a sigma^b / 4, and the term carries an overall minus sign.
    const double q = -term.coefficient / 4.0;
    const std::size_t dim = input.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        const bool differ = (((i >> a) ^ (i >> b)) & 1U) != 0;
        switch (term.axis) {
        case Axis::z:
            accumulator[i] += (differ ? -q : q) * input[i];
            break;
        case Axis::x:
            accumulator[i ^ mask] += q * input[i];
            break;
        case Axis::y:
            // sigma^y |s> = i (-1)^s |~s>, so sigma^y sigma^y picks up -(-1)^(s_a + s_b).
            accumulator[i ^ mask] += (differ ? q : -q) * input[i];
            break;
        }
    }
}

SpinOperator::SpinOperator(unsigned n_spins, std::span<const TwoSpinTerm> terms, Layout layout)
    : n_spins_(n_spins), diag_(std::size_t{1} << n_spins, 0.0) {
    if (n_spins == 0 || n_spins > 30) {
        throw UsageError("operator needs between 1 and 30 spins");
    }
    // Per pair: accumulated (x, y, z) coefficients.
    std::map<std::pair<unsigned, unsigned>, std::array<double, 3>> pairs;
    for (const auto& t : terms) {
        unsigned a = t.site_a.bit(layout);
        unsigned b = t.site_b.bit(layout);
        if (a == b) {
            throw UsageError("two-spin term couples a spin to itself");
        }
        if (a >= n_spins || b >= n_spins) {
            throw UsageError("two-spin term outside the operator's spin range");
        }
        if (a > b) {
            std::swap(a, b);
        }
        pairs[{a, b}][static_cast<int>(t.axis)] += t.coefficient;
    }
    for (const auto& [bits, c] : pairs) {
        const auto [a, b] = bits;
        const double cx = c[0];
        const double cy = c[1];
        const double cz = c[2];
        if (cz != 0.0) {
            const double q = -cz / 4.0;
            for (std::size_t i = 0; i < diag_.size(); ++i) {
                diag_[i] += ((((i >> a) ^ (i >> b)) & 1U) != 0) ? -q : q;
            }
            zero_ = false;
        }
        if (cx != 0.0 || cy != 0.0) {
            flips_.push_back({a, b, -(cx - cy) / 4.0, -(cx + cy) / 4.0});
            zero_ = false;
        }
    }
}

void SpinOperator::apply_range(const cplx* in, cplx* out_block, std::size_t begin,
                               std::size_t end, const kernels::KernelTable& k) const {
    k.diag_assign(out_block, diag_.data(), in, begin, end);
    for (const auto& f : flips_) {
        k.pair_flip_accumulate(out_block, in, f.bit_a, f.bit_b, f.c_eq, f.c_ne, begin, end);
    }
}

void SpinOperator::apply(const StateVector& in, StateVector& out) const {
    if (in.dim() != dim() || out.dim() != dim()) {
        throw UsageError("SpinOperator::apply: dimension mismatch");
    }
    if (in.data() == out.data()) {
        throw UsageError("SpinOperator::apply: input and output must not alias");
    }
    const auto& k = kernels::active();
    const std::size_t n = dim();
    for (std::size_t begin = 0; begin < n; begin += kBlock) {
        apply_range(in.data(), out.data() + begin, begin, std::min(n, begin + kBlock), k);
    }
}

double SpinOperator::norm_bound() const {
    double d = 0.0;
    for (double v : diag_) {
        d = std::max(d, std::abs(v));
    }
    for (const auto& f : flips_) {
        d += std::max(std::abs(f.c_eq), std::abs(f.c_ne));
    }
    return d;
}

StateVector apply_hamiltonian(std::span<const TwoSpinTerm> terms, const StateVector& input,
                              Layout layout) {
    const SpinOperator op(input.n_spins(), terms, layout);
    StateVector out(input.n_spins());
    op.apply(input, out);
    return out;
}

} // namespace decohere
