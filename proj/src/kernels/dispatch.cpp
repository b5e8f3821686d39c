#include "decohere/errors.hpp"
#include "decohere/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace decohere::kernels {
namespace {

std::atomic<const KernelTable*> g_active{nullptr};

bool cpu_has_avx2() {
#if defined(DECOHERE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& resolve() {
    if (const char* env = std::getenv("DECOHERE_SIMD")) {
        const std::string name(env);
        if (name == "scalar") {
            return table(SimdLevel::scalar);
        }
        if (name == "avx2" && available(SimdLevel::avx2)) {
            return table(SimdLevel::avx2);
        }
    }
    return table(detect());
}

} // namespace

std::string_view to_string(SimdLevel level) {
    switch (level) {
    case SimdLevel::scalar:
        return "scalar";
    case SimdLevel::avx2:
        return "avx2";
    }
    return "unknown";
}

bool available(SimdLevel level) {
    switch (level) {
    case SimdLevel::scalar:
        return true;
    case SimdLevel::avx2: {
        static const bool has = cpu_has_avx2();
        return has;
    }
    }
    return false;
}

SimdLevel detect() { return available(SimdLevel::avx2) ? SimdLevel::avx2 : SimdLevel::scalar; }

const KernelTable& table(SimdLevel level) {
#if defined(DECOHERE_HAVE_AVX2)
    if (level == SimdLevel::avx2) {
        if (!available(SimdLevel::avx2)) {
            throw UsageError("AVX2 kernels requested but the CPU does not support AVX2/FMA");
        }
        return avx2::table;
    }
#else
    if (level == SimdLevel::avx2) {
        throw UsageError("AVX2 kernels were not compiled into this build");
    }
#endif
    return scalar::table;
}

const KernelTable& active() {
    const KernelTable* t = g_active.load(std::memory_order_acquire);
    if (t == nullptr) {
        t = &resolve();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

void set_active(SimdLevel level) { g_active.store(&table(level), std::memory_order_release); }

} // namespace decohere::kernels
