#include <cmath>

#include "shakebal/simd/profile_kernels.hpp"

namespace shakebal::simd {

ProfileBasis::ProfileBasis(std::size_t n) : n_(n), cos1_(n), sin1_(n), cos2_(n), sin2_(n) {
    for (std::size_t k = 0; k < n; ++k) {
        const double t = grid_angle(k, n);
        cos1_[k] = std::cos(t);
        sin1_[k] = std::sin(t);
        cos2_[k] = std::cos(2.0 * t);
        sin2_[k] = std::sin(2.0 * t);
    }
}

namespace detail {

// Reference kernel. The vector variants must reproduce its per-sample
// arithmetic exactly: ((a1 c1 + b1 s1) + a2 c2) + b2 s2, no fma.
ProfileSums profile_sums_scalar(const ProfileBasis& basis, const HarmonicSet& h,
                                std::span<double> p1, std::span<double> p2) {
    const std::size_t n = basis.size();
    const double* c1 = basis.cos1();
    const double* s1 = basis.sin1();
    const double* c2 = basis.cos2();
    const double* s2 = basis.sin2();
    ProfileSums sums;
    for (std::size_t k = 0; k < n; ++k) {
        double v[4];
        for (int i = 0; i < 4; ++i) {
            const Harmonic2& q = h[i];
            v[i] = q.a1 * c1[k] + q.b1 * s1[k] + q.a2 * c2[k] + q.b2 * s2[k];
        }
        p1[k] = v[0];
        p2[k] = v[1];
        const double r = std::fabs(v[0]) + std::fabs(v[1]);
        sums.p1_sq += v[0] * v[0];
        sums.p2_sq += v[1] * v[1];
        sums.p3_sq += v[2] * v[2];
        sums.p4_sq += v[3] * v[3];
        sums.radius_sq += r * r;
    }
    return sums;
}

}  // namespace detail
}  // namespace shakebal::simd
