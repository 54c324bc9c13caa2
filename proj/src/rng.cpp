#include "shakebal/rng.hpp"

namespace shakebal {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(mix64(mix64(seed + kGolden) ^ mix64(stream * kGolden + 0x632BE59BD9B4E019ULL))) {}

CounterRng::result_type CounterRng::operator()() noexcept {
    const std::uint64_t x = key_ + (++counter_) * kGolden;
    return mix64(mix64(x) ^ key_);
}

double CounterRng::uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::size_t CounterRng::below(std::size_t n) noexcept {
    __extension__ using u128 = unsigned __int128;
    const u128 wide = static_cast<u128>((*this)()) * n;
    return static_cast<std::size_t>(wide >> 64);
}

}  // namespace shakebal
