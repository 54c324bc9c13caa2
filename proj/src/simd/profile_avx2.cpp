// Compiled with -mavx2 on x86-64 only; never called unless the CPU reports AVX2.

#include "shakebal/simd/profile_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#include <cmath>

namespace shakebal::simd::detail {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline __m256d eval(const Harmonic2& q, __m256d c1, __m256d s1, __m256d c2, __m256d s2) {
    __m256d v = _mm256_mul_pd(_mm256_set1_pd(q.a1), c1);
    v = _mm256_add_pd(v, _mm256_mul_pd(_mm256_set1_pd(q.b1), s1));
    v = _mm256_add_pd(v, _mm256_mul_pd(_mm256_set1_pd(q.a2), c2));
    return _mm256_add_pd(v, _mm256_mul_pd(_mm256_set1_pd(q.b2), s2));
}

}  // namespace

ProfileSums profile_sums_avx2(const ProfileBasis& basis, const HarmonicSet& h,
                              std::span<double> p1, std::span<double> p2) {
    const std::size_t n = basis.size();
    const std::size_t vec_end = n - n % 4;
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));

    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    __m256d acc3 = _mm256_setzero_pd();
    __m256d acc4 = _mm256_setzero_pd();
    __m256d acc_r = _mm256_setzero_pd();

    for (std::size_t k = 0; k < vec_end; k += 4) {
        const __m256d c1 = _mm256_loadu_pd(basis.cos1() + k);
        const __m256d s1 = _mm256_loadu_pd(basis.sin1() + k);
        const __m256d c2 = _mm256_loadu_pd(basis.cos2() + k);
        const __m256d s2 = _mm256_loadu_pd(basis.sin2() + k);
        const __m256d v1 = eval(h[0], c1, s1, c2, s2);
        const __m256d v2 = eval(h[1], c1, s1, c2, s2);
        const __m256d v3 = eval(h[2], c1, s1, c2, s2);
        const __m256d v4 = eval(h[3], c1, s1, c2, s2);
        _mm256_storeu_pd(p1.data() + k, v1);
        _mm256_storeu_pd(p2.data() + k, v2);
        const __m256d r = _mm256_add_pd(_mm256_and_pd(v1, abs_mask), _mm256_and_pd(v2, abs_mask));
        acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(v1, v1));
        acc2 = _mm256_add_pd(acc2, _mm256_mul_pd(v2, v2));
        acc3 = _mm256_add_pd(acc3, _mm256_mul_pd(v3, v3));
        acc4 = _mm256_add_pd(acc4, _mm256_mul_pd(v4, v4));
        acc_r = _mm256_add_pd(acc_r, _mm256_mul_pd(r, r));
    }

    ProfileSums sums{hsum(acc1), hsum(acc2), hsum(acc3), hsum(acc4), hsum(acc_r)};

    for (std::size_t k = vec_end; k < n; ++k) {
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
ProfileSums profile_sums_avx2(const ProfileBasis& b, const HarmonicSet& h, std::span<double> p1,
                              std::span<double> p2) {
    return profile_sums_scalar(b, h, p1, p2);
}
}  // namespace shakebal::simd::detail

#endif
