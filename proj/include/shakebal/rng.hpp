#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

namespace shakebal {

/// Counter-based 64-bit generator.
///
/// Output i of stream s under seed k is a pure function of (k, s, i), so
/// independent phases of an algorithm draw from their own streams and extra
/// draws in one phase never shift another. Satisfies
/// UniformRandomBitGenerator; the helper distributions below are defined
/// here rather than through <random> so results are identical across
/// standard libraries.
class CounterRng {
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

    result_type operator()() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Uniform integer on [0, n); n > 0.
    std::size_t below(std::size_t n) noexcept;

    std::uint64_t counter() const noexcept { return counter_; }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Named sub-streams. Values are part of the reproducibility contract.
enum class Stream : std::uint64_t {
    init = 1,
    velocity = 2,
    employed = 3,
    onlooker = 4,
    scout = 5,
    selection = 6,
    crossover = 7,
    mutation = 8,
    calibration = 9,
};

inline CounterRng make_rng(std::uint64_t seed, Stream stream) noexcept {
    return {seed, static_cast<std::uint64_t>(stream)};
}

}  // namespace shakebal
