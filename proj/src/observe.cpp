#include "decohere/observe.hpp"

#include "decohere/errors.hpp"
#include "decohere/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace decohere {

DensityMatrix4 DensityMatrix4::diagonal(double p1, double p2, double p3, double p4) {
    DensityMatrix4 d;
    d(0, 0) = p1;
    d(1, 1) = p2;
    d(2, 2) = p3;
    d(3, 3) = p4;
    return d;
}

DensityMatrix4 DensityMatrix4::pure(const std::array<cplx, 4>& psi) {
    DensityMatrix4 d;
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            d(k, l) = psi[k] * std::conj(psi[l]);
        }
    }
    return d;
}

cplx DensityMatrix4::trace() const { return m_[0][0] + m_[1][1] + m_[2][2] + m_[3][3]; }

double DensityMatrix4::hermiticity_error() const {
    double e = 0.0;
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            e = std::max(e, std::abs(m_[k][l] - std::conj(m_[l][k])));
        }
    }
    return e;
}

double DensityMatrix4::min_eigenvalue() const {
    Eigen::Matrix4cd m;
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            m(k, l) = m_[k][l];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

DensityMatrix4 DensityMatrix4::operator*(const DensityMatrix4& other) const {
    DensityMatrix4 r;
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            cplx s{};
            for (int m = 0; m < 4; ++m) {
                s += m_[k][m] * other.m_[m][l];
            }
            r(k, l) = s;
        }
    }
    return r;
}

const std::array<std::array<double, 4>, 4>& eigenbasis_transform() {
    constexpr double r = 1.0 / std::numbers::sqrt2;
    // rows: T1, S, T0, T-1; columns: product index c
    static const std::array<std::array<double, 4>, 4> u{{
        {1.0, 0.0, 0.0, 0.0},
        {0.0, -r, r, 0.0},
        {0.0, r, r, 0.0},
        {0.0, 0.0, 0.0, 1.0},
    }};
    return u;
}

std::array<cplx, 4> to_eigenbasis(const std::array<cplx, 4>& product_amplitudes) {
    const auto& u = eigenbasis_transform();
    std::array<cplx, 4> a{};
    for (int k = 0; k < 4; ++k) {
        for (int c = 0; c < 4; ++c) {
            a[k] += u[k][c] * product_amplitudes[c];
        }
    }
    return a;
}

DensityMatrix4 to_eigenbasis(const std::array<std::array<cplx, 4>, 4>& product) {
    const auto& u = eigenbasis_transform();
    DensityMatrix4 out;
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            cplx s{};
            for (int c = 0; c < 4; ++c) {
                if (u[k][c] == 0.0) {
                    continue;
                }
                for (int d = 0; d < 4; ++d) {
                    s += u[k][c] * product[c][d] * u[l][d];
                }
            }
            out(k, l) = s;
        }
    }
    return out;
}

DensityMatrix4 reduce(const StateVector& full_state) {
    if (full_state.n_spins() < 3) {
        throw UsageError("reduce: state must include at least one bath spin");
    }
    const double n = full_state.norm();
    if (std::abs(n - 1.0) > 1e-8) {
        throw UsageError("reduce: state is not normalized");
    }
    std::array<std::array<cplx, 4>, 4> prod{};
    const cplx* psi = full_state.data();
    const std::size_t n_bath_states = full_state.dim() / 4;
    for (std::size_t b = 0; b < n_bath_states; ++b) {
        const cplx* blk = psi + 4 * b;
        for (int c = 0; c < 4; ++c) {
            for (int d = c; d < 4; ++d) {
                prod[c][d] += blk[c] * std::conj(blk[d]);
            }
        }
    }
    for (int c = 0; c < 4; ++c) {
        for (int d = 0; d < c; ++d) {
            prod[c][d] = std::conj(prod[d][c]);
        }
        prod[c][c] = prod[c][c].real();
    }
    return to_eigenbasis(prod);
}

double quadratic_entropy(const DensityMatrix4& rho) {
    // Tr rho^2 = sum_kl rho_kl rho_lk = sum_kl |rho_kl|^2 for Hermitian rho
    double p = 0.0;
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            p += std::norm(rho(k, l));
        }
    }
    return 1.0 - p;
}

double loschmidt_echo(const DensityMatrix4& rho, const DensityMatrix4& rho0) {
    cplx tr{};
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            tr += rho(k, l) * rho0(l, k);
        }
    }
    if (std::abs(tr.imag()) > 1e-10) {
        throw NumericError("loschmidt_echo: trace has a non-negligible imaginary part");
    }
    return tr.real();
}

double energy_expectation(const StateVector& state, const SpinOperator& op,
                          StateVector& scratch) {
    op.apply(state, scratch);
    const cplx e = inner_product(state, scratch);
    const double scale = std::max(1.0, std::abs(e.real()));
    if (std::abs(e.imag()) > 1e-10 * scale) {
        throw NumericError("energy_expectation: imaginary residue above 1e-10");
    }
    return e.real();
}

double energy_expectation(const StateVector& state, const HamiltonianSpec& spec) {
    const auto op = make_operator(spec);
    StateVector scratch(state.n_spins());
    return energy_expectation(state, op, scratch);
}

} // namespace decohere
