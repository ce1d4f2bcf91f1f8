#include "landau/simd/kernels.hpp"

#include <atomic>

namespace landau::simd {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<const KernelTable*>& active() {
    static std::atomic<const KernelTable*> table{avx2_available() ? avx2_kernels() : &scalar_kernels()};
    return table;
}

} // namespace

bool avx2_available() {
    static const bool ok = avx2_kernels() != nullptr && cpu_has_avx2();
    return ok;
}

const KernelTable& kernels() { return *active().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
    if (b == Backend::Avx2 && avx2_available())
        active().store(avx2_kernels());
    else
        active().store(&scalar_kernels());
}

} // namespace landau::simd
