#pragma once

// Inner loops of the simulator. Every kernel has a portable scalar version and,
// on x86-64, an AVX2/FMA version; the active table is chosen once at startup
// from CPUID and can be overridden with DECOHERE_SIMD=scalar|avx2.
//
// All kernels work on interleaved std::complex<double> arrays. Range kernels
// take [begin, end) with begin and end even, so the AVX2 versions can process
// two amplitudes per register without a tail. Their output block pointer
// (out / w) addresses index begin, i.e. out[i - begin]; all other arrays are
// indexed absolutely.

#include <complex>
#include <cstddef>
#include <string_view>

namespace decohere::kernels {

using cplx = std::complex<double>;

enum class SimdLevel { scalar, avx2 };

std::string_view to_string(SimdLevel level);

struct KernelTable {
    SimdLevel level;

    // out[i - begin] = diag[i] * in[i]
    void (*diag_assign)(cplx* out, const double* diag, const cplx* in, std::size_t begin,
                        std::size_t end);

    // out[i - begin] += c(i) * in[i ^ mask], mask = (1 << bit_a) | (1 << bit_b), bit_a < bit_b,
    // c(i) = c_eq when bits a and b of i agree, c_ne otherwise.
    void (*pair_flip_accumulate)(cplx* out, const cplx* in, unsigned bit_a, unsigned bit_b,
                                 double c_eq, double c_ne, std::size_t begin, std::size_t end);

    // Chebyshev three-term step, in place on prev:
    //   prev[i] = alpha * (w[i - begin] - shift * cur[i]) - prev[i]
    //   acc[i] += coef * prev[i]
    void (*chebyshev_update)(cplx* prev, const cplx* cur, const cplx* w, double alpha,
                             double shift, cplx coef, cplx* acc, std::size_t begin,
                             std::size_t end);

    // sum_i conj(a[i]) * b[i]
    cplx (*dot)(const cplx* a, const cplx* b, std::size_t n);

    double (*norm_sq)(const cplx* a, std::size_t n);

    // y[i] += alpha * x[i]
    void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);

    // x[i] *= alpha
    void (*scale)(cplx alpha, cplx* x, std::size_t n);
};

bool available(SimdLevel level);

/// Best level supported by both the build and the running CPU.
SimdLevel detect();

const KernelTable& table(SimdLevel level);

/// Table used by the simulator. Resolved on first call.
const KernelTable& active();

/// Force a level for the rest of the process; throws UsageError if unavailable.
void set_active(SimdLevel level);

namespace scalar {
extern const KernelTable table;
}

#if defined(DECOHERE_HAVE_AVX2)
namespace avx2 {
extern const KernelTable table;
}
#endif

} // namespace decohere::kernels
