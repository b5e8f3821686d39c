#include "decohere/groundstate.hpp"

#include "decohere/errors.hpp"
#include "decohere/initstate.hpp"
#include "decohere/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace decohere {
namespace {

void orthogonalize(const std::vector<StateVector>& basis, std::size_t count, StateVector& w,
                   const kernels::KernelTable& k) {
    // Two passes of classical Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < count; ++i) {
            const cplx c = k.dot(basis[i].data(), w.data(), w.dim());
            k.axpy(-c, basis[i].data(), w.data(), w.dim());
        }
    }
}

} // namespace

GroundState ground_state(const SpinOperator& bath_op, const LanczosParams& params) {
    if (params.max_iterations < 2 || !(params.residual_tol > 0.0) || params.krylov_dim < 2) {
        throw UsageError("ground_state: need max_iterations >= 2, residual_tol > 0, "
                         "krylov_dim >= 2");
    }
    const auto& k = kernels::active();
    const unsigned n = bath_op.n_spins();
    const std::size_t dim = bath_op.dim();

    StateVector x = random_bath_state(static_cast<int>(n), params.start_seed);
    if (bath_op.is_zero()) {
        return {0.0, std::move(x), 0.0, 0, true};
    }

    const auto m_max = static_cast<std::size_t>(std::min<std::size_t>(params.krylov_dim, dim));
    const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
    std::vector<StateVector> basis;
    basis.reserve(m_max);
    StateVector w(n);
    StateVector hx(n);
    double best_residual = std::numeric_limits<double>::infinity();
    int iterations = 0;

    while (iterations < params.max_iterations) {
        basis.clear();
        basis.push_back(x);
        std::vector<double> alpha;
        std::vector<double> beta;
        for (std::size_t j = 0; j < m_max && iterations < params.max_iterations; ++j) {
            bath_op.apply(basis[j], w);
            ++iterations;
            const double a = k.dot(basis[j].data(), w.data(), dim).real();
            alpha.push_back(a);
            k.axpy(cplx{-a, 0.0}, basis[j].data(), w.data(), dim);
            if (j > 0) {
                k.axpy(cplx{-beta.back(), 0.0}, basis[j - 1].data(), w.data(), dim);
            }
            bool reorth = params.reorthogonalization == Reorthogonalization::full;
            if (!reorth) {
                const double wn = std::sqrt(k.norm_sq(w.data(), dim));
                reorth = std::abs(k.dot(basis[0].data(), w.data(), dim)) > sqrt_eps * wn;
            }
            if (reorth) {
                orthogonalize(basis, basis.size(), w, k);
            }
            const double b = std::sqrt(k.norm_sq(w.data(), dim));
            if (j + 1 == m_max || b < 1e-14 * (std::abs(a) + 1.0)) {
                break;
            }
            beta.push_back(b);
            StateVector next = w;
            k.scale(cplx{1.0 / b, 0.0}, next.data(), dim);
            basis.push_back(std::move(next));
        }

        const auto m = static_cast<Eigen::Index>(alpha.size());
        Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
        Eigen::VectorXd sub(std::max<Eigen::Index>(m - 1, 0));
        for (Eigen::Index i = 0; i + 1 < m; ++i) {
            sub(i) = beta[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);

        x.set_zero();
        for (Eigen::Index i = 0; i < m; ++i) {
            k.axpy(cplx{es.eigenvectors()(i, 0), 0.0}, basis[static_cast<std::size_t>(i)].data(),
                   x.data(), dim);
        }
        x.normalize();

        // Explicit residual of the Ritz pair.
        bath_op.apply(x, hx);
        ++iterations;
        const double rayleigh = k.dot(x.data(), hx.data(), dim).real();
        k.axpy(cplx{-rayleigh, 0.0}, x.data(), hx.data(), dim);
        const double residual = std::sqrt(k.norm_sq(hx.data(), dim));
        best_residual = std::min(best_residual, residual);
        if (residual <= params.residual_tol) {
            return {rayleigh, std::move(x), residual, iterations, false};
        }
    }
    throw ConvergenceError("ground_state: Lanczos did not reach residual " +
                               std::to_string(params.residual_tol) + " within " +
                               std::to_string(params.max_iterations) + " iterations",
                           best_residual);
}

GroundState bath_ground_state(const HamiltonianSpec& spec, const LanczosParams& params) {
    return ground_state(make_bath_operator(spec), params);
}

} // namespace decohere
