#include "shakebal/simd/profile_kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

#include <cmath>

namespace shakebal::simd::detail {

namespace {

inline float64x2_t eval(const Harmonic2& q, float64x2_t c1, float64x2_t s1, float64x2_t c2,
                        float64x2_t s2) {
    float64x2_t v = vmulq_n_f64(c1, q.a1);
    v = vaddq_f64(v, vmulq_n_f64(s1, q.b1));
    v = vaddq_f64(v, vmulq_n_f64(c2, q.a2));
    return vaddq_f64(v, vmulq_n_f64(s2, q.b2));
}

}  // namespace

ProfileSums profile_sums_neon(const ProfileBasis& basis, const HarmonicSet& h,
                              std::span<double> p1, std::span<double> p2) {
    const std::size_t n = basis.size();
    const std::size_t vec_end = n - n % 2;
    float64x2_t acc1 = vdupq_n_f64(0.0), acc2 = acc1, acc3 = acc1, acc4 = acc1, acc_r = acc1;

    for (std::size_t k = 0; k < vec_end; k += 2) {
        const float64x2_t c1 = vld1q_f64(basis.cos1() + k);
        const float64x2_t s1 = vld1q_f64(basis.sin1() + k);
        const float64x2_t c2 = vld1q_f64(basis.cos2() + k);
        const float64x2_t s2 = vld1q_f64(basis.sin2() + k);
        const float64x2_t v1 = eval(h[0], c1, s1, c2, s2);
        const float64x2_t v2 = eval(h[1], c1, s1, c2, s2);
        const float64x2_t v3 = eval(h[2], c1, s1, c2, s2);
        const float64x2_t v4 = eval(h[3], c1, s1, c2, s2);
        vst1q_f64(p1.data() + k, v1);
        vst1q_f64(p2.data() + k, v2);
        const float64x2_t r = vaddq_f64(vabsq_f64(v1), vabsq_f64(v2));
        acc1 = vaddq_f64(acc1, vmulq_f64(v1, v1));
        acc2 = vaddq_f64(acc2, vmulq_f64(v2, v2));
        acc3 = vaddq_f64(acc3, vmulq_f64(v3, v3));
        acc4 = vaddq_f64(acc4, vmulq_f64(v4, v4));
        acc_r = vaddq_f64(acc_r, vmulq_f64(r, r));
    }

    ProfileSums sums{vaddvq_f64(acc1), vaddvq_f64(acc2), vaddvq_f64(acc3), vaddvq_f64(acc4),
                     vaddvq_f64(acc_r)};
    if (vec_end < n) {
        const std::size_t k = vec_end;
        double v[4];
        for (int i = 0; i < 4; ++i) {
            const Harmonic2& q = h[i];
            v[i] = q.a1 * basis.cos1()[k] + q.b1 * basis.sin1()[k] + q.a2 * basis.cos2()[k] +
                   q.b2 * basis.sin2()[k];
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

}  // namespace shakebal::simd::detail

#else

namespace shakebal::simd::detail {
ProfileSums profile_sums_neon(const ProfileBasis& b, const HarmonicSet& h, std::span<double> p1,
                              std::span<double> p2) {
    return profile_sums_scalar(b, h, p1, p2);
}
}  // namespace shakebal::simd::detail

#endif
