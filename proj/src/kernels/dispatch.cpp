#include "bolhalf/errors.hpp"
#include "bolhalf/kernels.hpp"

#include <cstdlib>
#include <string>

namespace bolhalf::kernels {

#if defined(BOLHALF_BUILD_AVX2)
const KernelTable& avx2_kernels();
#endif

const KernelTable* avx2_table()
{
#if defined(BOLHALF_BUILD_AVX2)
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok ? &avx2_kernels() : nullptr;
#else
    return nullptr;
#endif
}

namespace {
const KernelTable*& current()
{
    static const KernelTable* sel = [] {
        const char* env = std::getenv("BOLHALF_SIMD");
        if (env && std::string(env) == "scalar") return &scalar_table();
        const KernelTable* v = avx2_table();
        return v ? v : &scalar_table();
    }();
    return sel;
}
} // namespace

const KernelTable& active() { return *current(); }

void force(Isa isa)
{
    if (isa == Isa::scalar) {
        current() = &scalar_table();
        return;
    }
    const KernelTable* v = avx2_table();
    if (!v) throw InvalidArgument("AVX2 kernels are not available on this build or CPU");
    current() = v;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

} // namespace bolhalf::kernels
