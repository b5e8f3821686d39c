#include "decohere/oracle.hpp"

#include "decohere/errors.hpp"
#include "decohere/model.hpp"

#include <cmath>
#include <numbers>

namespace decohere {
namespace {

using Spin2 = std::array<std::array<cplx, 2>, 2>;

// Spin-1/2 matrices in the (up, down) = (0, 1) basis.
const Spin2& spin_matrix(Axis axis) {
    static const Spin2 sx{{{0.0, 0.5}, {0.5, 0.0}}};
    static const Spin2 sy{{{cplx{0.0, 0.0}, cplx{0.0, -0.5}}, {cplx{0.0, 0.5}, cplx{0.0, 0.0}}}};
    static const Spin2 sz{{{0.5, 0.0}, {0.0, -0.5}}};
    switch (axis) {
    case Axis::x:
        return sx;
    case Axis::y:
        return sy;
    case Axis::z:
        return sz;
    }
    return sz;
}

void check_dim(std::size_t dim) {
    if (dim > kMaxDenseDim) {
        throw UsageError("dense oracle limited to dimension 4096");
    }
}

Eigen::VectorXcd to_eigen(const StateVector& v) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(v.dim()));
    for (std::size_t i = 0; i < v.dim(); ++i) {
        out(static_cast<Eigen::Index>(i)) = v[i];
    }
    return out;
}

StateVector from_eigen(unsigned n_spins, const Eigen::VectorXcd& v) {
    std::vector<cplx> amps(v.data(), v.data() + v.size());
    return StateVector(n_spins, std::move(amps));
}

// Single bath-spin operators on the bath-only space (spin j at bit j - 1).
Eigen::MatrixXcd bath_spin_z(unsigned n_bath, int j) {
    const Eigen::Index dim = Eigen::Index{1} << n_bath;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        m(c, c) = ((c >> (j - 1)) & 1) ? -0.5 : 0.5;
    }
    return m;
}

Eigen::MatrixXcd bath_spin_raise(unsigned n_bath, int j) {
    const Eigen::Index dim = Eigen::Index{1} << n_bath;
    const Eigen::Index bit = Eigen::Index{1} << (j - 1);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        if (c & bit) { // down -> up
            m(c ^ bit, c) = 1.0;
        }
    }
    return m;
}

} // namespace

StateVector DenseOperator::apply(const StateVector& v) const {
    if (v.dim() != dim()) {
        throw UsageError("DenseOperator::apply: dimension mismatch");
    }
    return from_eigen(n_spins, matrix * to_eigen(v));
}

double DenseOperator::hermiticity_error() const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

DenseOperator densify(std::span<const TwoSpinTerm> terms, unsigned n_spins, Layout layout) {
    const std::size_t dim = std::size_t{1} << n_spins;
    check_dim(dim);
    DenseOperator op{n_spins, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                     static_cast<Eigen::Index>(dim))};
    for (const auto& t : terms) {
        const unsigned a = t.site_a.bit(layout);
        const unsigned b = t.site_b.bit(layout);
        if (a == b || a >= n_spins || b >= n_spins) {
            throw UsageError("densify: term sites outside the space");
        }
        const Spin2& s = spin_matrix(t.axis);
        for (std::size_t col = 0; col < dim; ++col) {
            const int ca = static_cast<int>((col >> a) & 1U);
            const int cb = static_cast<int>((col >> b) & 1U);
            for (int ra = 0; ra < 2; ++ra) {
                for (int rb = 0; rb < 2; ++rb) {
                    const cplx v = s[ra][ca] * s[rb][cb];
                    if (v == cplx{}) {
                        continue;
                    }
                    std::size_t row = col & ~((std::size_t{1} << a) | (std::size_t{1} << b));
                    row |= static_cast<std::size_t>(ra) << a;
                    row |= static_cast<std::size_t>(rb) << b;
                    op.matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
                        -t.coefficient * v;
                }
            }
        }
    }
    return op;
}

DenseOperator densify(const HamiltonianSpec& spec) {
    const auto t = spec.terms();
    return densify(t, spec.n_spins(), Layout::full);
}

DenseOperator densify_bath(const HamiltonianSpec& spec) {
    const auto t = spec.flags.bath ? spec.bath_terms() : std::vector<TwoSpinTerm>{};
    return densify(t, static_cast<unsigned>(spec.n_bath), Layout::bath_only);
}

DenseEvolver::DenseEvolver(const Eigen::MatrixXcd& hermitian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian);
    if (es.info() != Eigen::Success) {
        throw NumericError("dense eigendecomposition failed");
    }
    values_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
}

Eigen::VectorXcd DenseEvolver::evolve(const Eigen::VectorXcd& v, double t) const {
    Eigen::VectorXcd coeff = vectors_.adjoint() * v;
    for (Eigen::Index i = 0; i < coeff.size(); ++i) {
        coeff(i) *= std::exp(cplx{0.0, -values_(i) * t});
    }
    return vectors_ * coeff;
}

StateVector dense_evolve(const DenseOperator& op, const StateVector& state, double t) {
    if (state.dim() != op.dim()) {
        throw UsageError("dense_evolve: dimension mismatch");
    }
    const DenseEvolver ev(op.matrix);
    return from_eigen(op.n_spins, ev.evolve(to_eigen(state), t));
}

double commutator_norm(const DenseOperator& a, const DenseOperator& b) {
    if (a.dim() != b.dim()) {
        throw UsageError("commutator_norm: dimension mismatch");
    }
    return (a.matrix * b.matrix - b.matrix * a.matrix).norm();
}

std::vector<double> echo_commuting(const std::array<cplx, 4>& a, const StateVector& bath_state0,
                                   const HamiltonianSpec& spec, std::span<const double> t_grid) {
    if (!coupling_commutes_with_central(spec)) {
        throw UsageError("echo_commuting: central-bath coupling must be isotropic and equal for "
                         "both central spins");
    }
    const auto n_bath = static_cast<unsigned>(spec.n_bath);
    if (bath_state0.n_spins() != n_bath) {
        throw UsageError("echo_commuting: bath state does not match n_bath");
    }
    const Eigen::Index d = Eigen::Index{1} << n_bath;
    check_dim(static_cast<std::size_t>(3 * d));

    const Eigen::MatrixXcd h_e = densify_bath(spec).matrix;

    // Triplet block, central index m = 0, 1, 2 for T1, T0, T-1.
    Eigen::MatrixXcd h_t = Eigen::MatrixXcd::Zero(3 * d, 3 * d);
    for (int m = 0; m < 3; ++m) {
        h_t.block(m * d, m * d, d, d) = h_e;
    }
    if (spec.flags.coupling) {
        const double r2 = std::numbers::sqrt2;
        for (int j = 1; j <= spec.n_bath; ++j) {
            const double delta = spec.central_bath.values[static_cast<std::size_t>(j - 1)][0];
            if (delta == 0.0) {
                continue;
            }
            const Eigen::MatrixXcd iz = bath_spin_z(n_bath, j);
            const Eigen::MatrixXcd ip = bath_spin_raise(n_bath, j);
            const Eigen::MatrixXcd im = ip.adjoint();
            // -Delta [L^z I^z + (L^+ I^- + L^- I^+) / 2], L^z = diag(1, 0, -1),
            // <T1|L^+|T0> = <T0|L^+|T-1> = sqrt2.
            h_t.block(0, 0, d, d) += -delta * iz;
            h_t.block(2 * d, 2 * d, d, d) += delta * iz;
            h_t.block(0, d, d, d) += -delta * 0.5 * r2 * im;
            h_t.block(d, 2 * d, d, d) += -delta * 0.5 * r2 * im;
            h_t.block(d, 0, d, d) += -delta * 0.5 * r2 * ip;
            h_t.block(2 * d, d, d, d) += -delta * 0.5 * r2 * ip;
        }
    }

    const Eigen::VectorXcd phi0 = to_eigen(bath_state0);
    Eigen::VectorXcd triplet0(3 * d);
    triplet0.segment(0, d) = a[0] * phi0;
    triplet0.segment(d, d) = a[2] * phi0;
    triplet0.segment(2 * d, d) = a[3] * phi0;

    const DenseEvolver singlet_ev(h_e);
    const DenseEvolver triplet_ev(h_t);
    std::vector<double> echo;
    echo.reserve(t_grid.size());
    for (double t : t_grid) {
        const Eigen::VectorXcd phi_s = singlet_ev.evolve(phi0, t);
        const Eigen::VectorXcd chi = triplet_ev.evolve(triplet0, t);
        Eigen::VectorXcd overlap = std::norm(a[1]) * phi_s;
        overlap += std::conj(a[0]) * chi.segment(0, d);
        overlap += std::conj(a[2]) * chi.segment(d, d);
        overlap += std::conj(a[3]) * chi.segment(2 * d, d);
        echo.push_back(overlap.squaredNorm());
    }
    return echo;
}

} // namespace decohere
