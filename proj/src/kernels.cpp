#include "lchi/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace lchi {

#if defined(LCHI_BUILD_AVX2)
const Kernels* avx2_kernels_impl();
#endif

const Kernels* avx2_kernels() {
#if defined(LCHI_BUILD_AVX2)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) return avx2_kernels_impl();
#endif
    return nullptr;
}

const Kernels& active_kernels() {
    static const Kernels* picked = [] {
        const char* force = std::getenv("LCHI_KERNELS");
        if (force && std::strcmp(force, "scalar") == 0) return &scalar_kernels();
        if (const Kernels* k = avx2_kernels()) return k;
        return &scalar_kernels();
    }();
    return *picked;
}

}  // namespace lchi
