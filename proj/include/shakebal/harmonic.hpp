#pragma once

// Closed-form Fourier view of the shaking profiles.
//
// Every P_i(theta) is a trigonometric polynomial with only the first and
// second harmonics, so it is fully described by four coefficients. The
// objective evaluates these on a grid through the SIMD kernels and uses the
// exact algebra below for the non-smooth |P1 * P2| term.

#include <array>
#include <cstddef>
#include <vector>

#include "shakebal/mechanism.hpp"

namespace shakebal {

/// a1 cos(t) + b1 sin(t) + a2 cos(2t) + b2 sin(2t)
struct Harmonic2 {
    double a1 = 0.0;
    double b1 = 0.0;
    double a2 = 0.0;
    double b2 = 0.0;

    double operator()(double theta) const noexcept;
};

/// Coefficients of P1..P4 (index 0..3) for one configuration.
using HarmonicSet = std::array<Harmonic2, 4>;

HarmonicSet harmonic_profile(const MechanismConfig& cfg, const DecisionVector& dv);

/// Real trigonometric polynomial c_0 + sum_m (c_m cos(m t) + s_m sin(m t)).
class TrigPoly {
public:
    explicit TrigPoly(std::size_t degree = 0);
    explicit TrigPoly(const Harmonic2& h);

    std::size_t degree() const noexcept { return cos_.size() - 1; }
    double& cos_coef(std::size_t m) { return cos_.at(m); }
    double& sin_coef(std::size_t m) { return sin_.at(m); }
    double cos_coef(std::size_t m) const { return cos_.at(m); }
    double sin_coef(std::size_t m) const { return sin_.at(m); }

    double operator()(double theta) const noexcept;

    /// Exact integral over [lo, hi].
    double integral(double lo, double hi) const noexcept;

    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

private:
    double antiderivative(double theta) const noexcept;

    std::vector<double> cos_;
    std::vector<double> sin_;
};

/// Sign-change locations of `h` on [0, 2pi), sorted ascending.
///
/// `samples` holds h on the uniform grid 2 pi k / n. Brackets come from sign
/// changes between neighbouring samples (with wrap-around) and are refined to
/// machine precision. Pairs of roots closer together than one grid step are
/// invisible; their effect on |h|-integrals is third order in the step.
std::vector<double> sign_changes(const Harmonic2& h, const double* samples, std::size_t n);

/// Exact integral of |p*q| over one period given the combined sign-change
/// points of p and q (any order, any duplicates).
double integrate_abs_product(const Harmonic2& p, const Harmonic2& q, std::vector<double> breaks);

}  // namespace shakebal
