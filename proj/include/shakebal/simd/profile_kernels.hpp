#pragma once

// Grid evaluation of the four shaking profiles.
//
// One scalar reference kernel plus vectorized variants (AVX2 on x86-64,
// NEON on AArch64). The active variant is picked once at runtime from CPU
// support; SHAKEBAL_SIMD=scalar|avx2|neon overrides the choice. All variants
// produce identical per-sample values (no fused multiply-add) and differ only
// in the summation order of the reductions.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "shakebal/harmonic.hpp"

namespace shakebal::simd {

/// Structure-of-arrays table of cos t, sin t, cos 2t, sin 2t on the grid
/// t_k = 2 pi k / n.
class ProfileBasis {
public:
    explicit ProfileBasis(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    const double* cos1() const noexcept { return cos1_.data(); }
    const double* sin1() const noexcept { return sin1_.data(); }
    const double* cos2() const noexcept { return cos2_.data(); }
    const double* sin2() const noexcept { return sin2_.data(); }

private:
    std::size_t n_;
    std::vector<double> cos1_, sin1_, cos2_, sin2_;
};

/// Plain sums over the grid (no 2pi/n weight applied).
struct ProfileSums {
    double p1_sq = 0.0;
    double p2_sq = 0.0;
    double p3_sq = 0.0;
    double p4_sq = 0.0;
    double radius_sq = 0.0;  ///< sum of (|P1| + |P2|)^2
};

/// Writes P1 and P2 samples (each basis.size() long) and returns the sums.
using ProfileKernel = ProfileSums (*)(const ProfileBasis& basis, const HarmonicSet& h,
                                      std::span<double> p1, std::span<double> p2);

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

/// True when the variant was compiled in and the CPU supports it.
bool isa_available(Isa isa) noexcept;

ProfileKernel kernel_for(Isa isa);

/// Best available variant, or the SHAKEBAL_SIMD override. Resolved once.
Isa active_isa();

ProfileSums profile_sums(const ProfileBasis& basis, const HarmonicSet& h, std::span<double> p1,
                         std::span<double> p2);

namespace detail {
ProfileSums profile_sums_scalar(const ProfileBasis&, const HarmonicSet&, std::span<double>,
                                std::span<double>);
ProfileSums profile_sums_avx2(const ProfileBasis&, const HarmonicSet&, std::span<double>,
                              std::span<double>);
ProfileSums profile_sums_neon(const ProfileBasis&, const HarmonicSet&, std::span<double>,
                              std::span<double>);
}  // namespace detail

}  // namespace shakebal::simd
