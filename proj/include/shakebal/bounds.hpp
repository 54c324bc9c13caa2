#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace shakebal {

/// Axis-aligned search box.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t dim() const noexcept { return lower.size(); }
    double width(std::size_t j) const { return upper[j] - lower[j]; }

    /// Throws std::invalid_argument on size mismatch, non-finite or lower > upper.
    void validate() const;

    bool contains(std::span<const double> x) const noexcept;
    void clamp(std::span<double> x) const noexcept;

    static Bounds uniform(std::size_t dim, double lo, double hi);
};

}  // namespace shakebal
