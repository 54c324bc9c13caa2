#include <cstdlib>
#include <stdexcept>
#include <string>

#include "shakebal/simd/profile_kernels.hpp"

namespace shakebal::simd {

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::neon:
#if defined(__aarch64__) && defined(__ARM_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

ProfileKernel kernel_for(Isa isa) {
    if (!isa_available(isa))
        throw std::runtime_error("SIMD variant not available: " + std::string(isa_name(isa)));
    switch (isa) {
        case Isa::avx2: return &detail::profile_sums_avx2;
        case Isa::neon: return &detail::profile_sums_neon;
        case Isa::scalar: break;
    }
    return &detail::profile_sums_scalar;
}

namespace {

Isa resolve() {
    if (const char* env = std::getenv("SHAKEBAL_SIMD"); env != nullptr && *env != '\0') {
        const std::string want(env);
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
            if (want == isa_name(isa) && isa_available(isa)) return isa;
        }
        if (want != "auto") return Isa::scalar;
    }
    if (isa_available(Isa::avx2)) return Isa::avx2;
    if (isa_available(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

}  // namespace

Isa active_isa() {
    static const Isa isa = resolve();
    return isa;
}

ProfileSums profile_sums(const ProfileBasis& basis, const HarmonicSet& h, std::span<double> p1,
                         std::span<double> p2) {
    static const ProfileKernel kernel = kernel_for(active_isa());
    return kernel(basis, h, p1, p2);
}

}  // namespace shakebal::simd
