#pragma once

// Polar-area balancing cost with moment constraints handled by an exterior
// penalty.
//
//   f  = area enclosed by r(t) = |P1(t)| + |P2(t)| in polar coordinates
//   C1 = area enclosed by |P3(t)|,  C2 = area enclosed by |P4(t)|
//   total = f + penalty_weight * (max(0, C1 - c1_max) / c1_max
//                                 + max(0, C2 - c2_max) / c2_max)

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>

#include "shakebal/bounds.hpp"
#include "shakebal/mechanism.hpp"

namespace shakebal {

namespace simd {
class ProfileBasis;
}

enum class Quadrature {
    /// Rectangle rule for the smooth squared terms, exact piecewise
    /// integration of the kinked 2|P1 P2| term. Independent of the grid
    /// beyond root bracketing.
    exact_kinks,
    /// Periodic rectangle rule applied to r^2 directly; converges at O(h^2)
    /// because of the |.| kinks.
    rectangle,
};

struct ObjectiveSpec {
    std::size_t n_samples = 720;
    double c1_max = 0.0;  ///< must be set (or calibrated) before use
    double c2_max = 0.0;
    double penalty_weight = 1e6;
    /// Box over (m_1, m_2, phi_1, phi_2).
    Bounds bounds = default_bounds(MechanismConfig{});
    Quadrature quadrature = Quadrature::exact_kinks;

    void validate() const;

    /// m_1, m_2 in [0, 50 m_0]; phi_1, phi_2 in [0, 2pi].
    static Bounds default_bounds(const MechanismConfig& cfg);
};

struct CostBreakdown {
    double raw_cost = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double violation = 0.0;
    double total = 0.0;
};

/// Polar area (1/2) * (2 pi / n) * sum r_k^2 of radii sampled on the uniform
/// grid 2 pi k / n. Throws std::invalid_argument on empty, negative or
/// non-finite input.
double polar_area(std::span<const double> radii);

/// Unpenalized areas (f, C1, C2); the limits and weight in `spec` are unused.
struct ProfileAreas {
    double f = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
};

/// Reusable evaluator: precomputes the grid basis once for a configuration.
/// Calls are const and safe from multiple threads.
class BalancingObjective {
public:
    BalancingObjective(const MechanismConfig& cfg, const ObjectiveSpec& spec);

    ProfileAreas areas(const DecisionVector& dv) const;
    CostBreakdown evaluate(const DecisionVector& dv) const;

    /// Penalized total at an optimizer point (m_1, m_2, phi_1, phi_2).
    double operator()(std::span<const double> x) const;

    const MechanismConfig& config() const noexcept { return cfg_; }
    const ObjectiveSpec& spec() const noexcept { return spec_; }

private:
    MechanismConfig cfg_;
    ObjectiveSpec spec_;
    std::shared_ptr<const simd::ProfileBasis> basis_;
};

CostBreakdown evaluate(const MechanismConfig& cfg, const DecisionVector& dv, const ObjectiveSpec& spec);

/// Areas only, for callers without constraint limits yet (calibration, plots).
ProfileAreas profile_areas(const MechanismConfig& cfg, const DecisionVector& dv, std::size_t n_samples,
                           Quadrature quadrature = Quadrature::exact_kinks);

struct CalibratedLimits {
    double c1_max = 0.0;
    double c2_max = 0.0;

    /// Zero limits mean the sampled mechanism never produced a moment.
    bool degenerate() const noexcept { return !(c1_max > 0.0) || !(c2_max > 0.0); }
};

/// Samples n_random decision vectors uniformly in `bounds` and returns
/// fraction * (max C1, max C2) over the sample. Deterministic per seed.
CalibratedLimits calibrate_bounds(const MechanismConfig& cfg, const Bounds& bounds, std::size_t n_random,
                                  double fraction, std::uint64_t seed, std::size_t n_samples = 720);

}  // namespace shakebal
