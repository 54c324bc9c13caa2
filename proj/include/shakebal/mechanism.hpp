#pragma once

// Shaking forces and moments of a double four-bar crank-slider mechanism
// balanced by two counterweights on the inner disks.
//
// Units are consistent-by-convention: lengths, masses and speed may use any
// coherent system (the defaults are SI). Forces come out in mass*length/s^2.

#include <cstddef>
#include <numbers>
#include <vector>

namespace shakebal {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps any finite angle onto [0, 2pi).
double wrap_angle(double radians) noexcept;

/// Fixed physical parameters of the mechanism.
///
/// Both crank-sliders share the crank mass, slider mass, crank radius and
/// rod length. The second crank-slider runs `theta_0` ahead of the first.
/// Axial planes are spaced a_1 (plane 1 -> 2), a_2 (plane 2 -> 3) and
/// a_1 (plane 3 -> 4); moments are taken about plane 1.
struct MechanismConfig {
    double m_c = 0.5;   ///< eccentric crank mass
    double m_p = 0.3;   ///< equivalent reciprocating slider mass
    double R = 0.05;    ///< crank radius
    double L = 0.2;     ///< connecting-rod length
    double omega = kTwoPi * 10.0;
    double m_0 = 0.2;   ///< known unbalance mass on disk 2
    double R_0 = 0.04;  ///< radius of the unbalance mass
    double alpha = 0.0; ///< angular position of the unbalance mass
    double a_1 = 0.1;
    double a_2 = 0.15;
    double theta_0 = std::numbers::pi;
    double r_1 = 0.04;  ///< counterweight radius on disk 2
    double r_2 = 0.04;  ///< counterweight radius on disk 3

    /// Throws std::invalid_argument naming the first violated invariant.
    void validate() const;

    /// Copy with alpha and theta_0 wrapped to [0, 2pi).
    [[nodiscard]] MechanismConfig normalized() const;
};

/// The four balancing unknowns: counterweight masses and angular positions.
/// Angles are wrapped to [0, 2pi) on construction.
class DecisionVector {
public:
    DecisionVector() = default;
    DecisionVector(double m_1, double m_2, double phi_1, double phi_2);

    /// From the optimizer's ordering (m_1, m_2, phi_1, phi_2).
    static DecisionVector from_point(const std::vector<double>& x);

    double m_1() const noexcept { return m_1_; }
    double m_2() const noexcept { return m_2_; }
    double phi_1() const noexcept { return phi_1_; }
    double phi_2() const noexcept { return phi_2_; }

    std::vector<double> to_point() const { return {m_1_, m_2_, phi_1_, phi_2_}; }

    static DecisionVector zero() { return {}; }

private:
    double m_1_ = 0.0;
    double m_2_ = 0.0;
    double phi_1_ = 0.0;
    double phi_2_ = 0.0;
};

struct DynamicsSample {
    double theta = 0.0;
    double p1 = 0.0; ///< net force along x
    double p2 = 0.0; ///< net force along y
    double p3 = 0.0; ///< net moment about x
    double p4 = 0.0; ///< net moment about y
};

// Each of the four functions below sums the inertia terms one by one in the
// order the balance equations list them. Sliders reciprocate along x, so the
// m_p terms only appear in the x force and the y moment.

double force_x(const MechanismConfig& cfg, const DecisionVector& dv, double theta);
double force_y(const MechanismConfig& cfg, const DecisionVector& dv, double theta);
double moment_x(const MechanismConfig& cfg, const DecisionVector& dv, double theta);
double moment_y(const MechanismConfig& cfg, const DecisionVector& dv, double theta);

DynamicsSample sample_at(const MechanismConfig& cfg, const DecisionVector& dv, double theta);

/// Samples at theta_k = 2 pi k / n, k = 0..n-1. Rejects n < 8.
std::vector<DynamicsSample> sample_profile(const MechanismConfig& cfg, const DecisionVector& dv,
                                           std::size_t n_samples);

/// Grid angle 2 pi k / n.
double grid_angle(std::size_t k, std::size_t n) noexcept;

}  // namespace shakebal
