// Compiled with -mavx2 -mfma. Only reached through the dispatch table after a
// CPUID check, so nothing here may be called on older hardware.

#include "decohere/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

namespace decohere::kernels::avx2 {
namespace {

// One __m256d holds two interleaved complex values: [re0, im0, re1, im1].
inline double* as_double(cplx* p) { return reinterpret_cast<double*>(p); }
inline const double* as_double(const cplx* p) { return reinterpret_cast<const double*>(p); }

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(as_double(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(as_double(p), v); }

// (a + ib) * v for a complex scalar broadcast as (re_b, im_alt) pair
inline __m256d cmul(__m256d re_b, __m256d im_alt, __m256d v) {
    const __m256d swapped = _mm256_permute_pd(v, 0b0101);
    return _mm256_fmadd_pd(re_b, v, _mm256_mul_pd(im_alt, swapped));
}

inline __m256d im_alternating(double im) { return _mm256_setr_pd(-im, im, -im, im); }

double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void diag_assign(cplx* out, const double* diag, const cplx* in, std::size_t begin,
                 std::size_t end) {
    for (std::size_t i = begin; i < end; i += 2) {
        // [d0, d0, d1, d1]
        const __m128d d = _mm_loadu_pd(diag + i);
        const __m256d dd = _mm256_permute4x64_pd(_mm256_castpd128_pd256(d), 0b01010000);
        store2(out + (i - begin), _mm256_mul_pd(dd, load2(in + i)));
    }
}

void pair_flip_accumulate(cplx* out, const cplx* in, unsigned bit_a, unsigned bit_b,
                          double c_eq, double c_ne, std::size_t begin, std::size_t end) {
    const std::size_t flip_b = std::size_t{1} << bit_b;
    if (bit_a == 0) {
        // Lanes differ in bit 0, which belongs to the pair: the partner amplitudes
        // sit swapped in the register, and each lane has its own coefficient.
        const __m256d coef_b0 = _mm256_setr_pd(c_eq, c_eq, c_ne, c_ne);
        const __m256d coef_b1 = _mm256_setr_pd(c_ne, c_ne, c_eq, c_eq);
        std::size_t i = begin;
        while (i < end) {
            const std::size_t run_end = std::min(end, (i | (flip_b - 1)) + 1);
            const __m256d c = (i & flip_b) ? coef_b1 : coef_b0;
            for (; i < run_end; i += 2) {
                const __m256d v = load2(in + (i ^ flip_b));
                const __m256d partner = _mm256_permute2f128_pd(v, v, 0x01);
                cplx* dst = out + (i - begin);
                store2(dst, _mm256_fmadd_pd(c, partner, load2(dst)));
            }
        }
        return;
    }
    // Both bits above bit 0: coefficient and partner offset are constant over
    // aligned runs of length 2^bit_a.
    const std::size_t mask = (std::size_t{1} << bit_a) | flip_b;
    const std::size_t run = std::size_t{1} << bit_a;
    std::size_t i = begin;
    while (i < end) {
        const std::size_t run_end = std::min(end, (i | (run - 1)) + 1);
        const bool differ = (((i >> bit_a) ^ (i >> bit_b)) & 1U) != 0;
        const __m256d c = _mm256_set1_pd(differ ? c_ne : c_eq);
        const cplx* src = in + (i ^ mask);
        cplx* dst = out + (i - begin);
        const std::size_t len = run_end - i;
        for (std::size_t k = 0; k < len; k += 2) {
            store2(dst + k, _mm256_fmadd_pd(c, load2(src + k), load2(dst + k)));
        }
        i = run_end;
    }
}

void chebyshev_update(cplx* prev, const cplx* cur, const cplx* w, double alpha, double shift,
                      cplx coef, cplx* acc, std::size_t begin, std::size_t end) {
    const __m256d va = _mm256_set1_pd(alpha);
    const __m256d vs = _mm256_set1_pd(shift);
    const __m256d cr = _mm256_set1_pd(coef.real());
    const __m256d ci = im_alternating(coef.imag());
    for (std::size_t i = begin; i < end; i += 2) {
        const __m256d t = _mm256_fnmadd_pd(vs, load2(cur + i), load2(w + (i - begin)));
        const __m256d next = _mm256_fmsub_pd(va, t, load2(prev + i));
        store2(prev + i, next);
        store2(acc + i, _mm256_add_pd(load2(acc + i), cmul(cr, ci, next)));
    }
}

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = load2(a + i);
        const __m256d vb = load2(b + i);
        acc_re = _mm256_fmadd_pd(va, vb, acc_re);
        acc_im = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), acc_im);
    }
    // acc_im lanes hold (ar*bi, ai*br); the imaginary part is their difference
    const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    double re = hsum(acc_re);
    double im = hsum(_mm256_mul_pd(acc_im, sign));
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

double norm_sq(const cplx* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = load2(a + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        s += std::norm(a[i]);
    }
    return s;
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = im_alternating(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        store2(y + i, _mm256_add_pd(load2(y + i), cmul(ar, ai, load2(x + i))));
    }
    for (; i < n; ++i) {
        y[i] += alpha * x[i];
    }
}

void scale(cplx alpha, cplx* x, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = im_alternating(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        store2(x + i, cmul(ar, ai, load2(x + i)));
    }
    for (; i < n; ++i) {
        x[i] *= alpha;
    }
}

} // namespace

const KernelTable table{
    SimdLevel::avx2, diag_assign, pair_flip_accumulate, chebyshev_update, dot, norm_sq, axpy,
    scale,
};

} // namespace decohere::kernels::avx2
