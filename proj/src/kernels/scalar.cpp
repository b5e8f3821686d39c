#include "decohere/kernels.hpp"

namespace decohere::kernels::scalar {
namespace {

void diag_assign(cplx* out, const double* diag, const cplx* in, std::size_t begin,
                 std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        out[i - begin] = diag[i] * in[i];
    }
}

void pair_flip_accumulate(cplx* out, const cplx* in, unsigned bit_a, unsigned bit_b,
                          double c_eq, double c_ne, std::size_t begin, std::size_t end) {
    const std::size_t mask = (std::size_t{1} << bit_a) | (std::size_t{1} << bit_b);
    for (std::size_t i = begin; i < end; ++i) {
        const bool differ = (((i >> bit_a) ^ (i >> bit_b)) & 1U) != 0;
        out[i - begin] += (differ ? c_ne : c_eq) * in[i ^ mask];
    }
}

void chebyshev_update(cplx* prev, const cplx* cur, const cplx* w, double alpha, double shift,
                      cplx coef, cplx* acc, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        const cplx next = alpha * (w[i - begin] - shift * cur[i]) - prev[i];
        prev[i] = next;
        acc[i] += coef * next;
    }
}

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

double norm_sq(const cplx* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += std::norm(a[i]);
    }
    return s;
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y[i] += alpha * x[i];
    }
}

void scale(cplx alpha, cplx* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        x[i] *= alpha;
    }
}

} // namespace

const KernelTable table{
    SimdLevel::scalar, diag_assign, pair_flip_accumulate, chebyshev_update, dot, norm_sq, axpy,
    scale,
};

} // namespace decohere::kernels::scalar
