#include "shakebal/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace shakebal {

void Bounds::validate() const {
    if (lower.size() != upper.size())
        throw std::invalid_argument("Bounds: lower and upper have different sizes");
    if (lower.empty()) throw std::invalid_argument("Bounds: dimension must be >= 1");
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]))
            throw std::invalid_argument("Bounds: non-finite bound in dimension " + std::to_string(j));
        if (lower[j] > upper[j])
            throw std::invalid_argument("Bounds: lower > upper in dimension " + std::to_string(j));
    }
}

bool Bounds::contains(std::span<const double> x) const noexcept {
    if (x.size() != lower.size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (!(x[j] >= lower[j] && x[j] <= upper[j])) return false;
    return true;
}

void Bounds::clamp(std::span<double> x) const noexcept {
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = std::clamp(x[j], lower[j], upper[j]);
}

Bounds Bounds::uniform(std::size_t dim, double lo, double hi) {
    return {std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
}

}  // namespace shakebal
