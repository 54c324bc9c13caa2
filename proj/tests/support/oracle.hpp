#pragma once

// Second, deliberately naive implementation of the balance equations used as
// a test oracle. Each term is written out in full with its own trig call and
// no shared subexpressions, so it shares no code path with the library.

#include <cmath>
#include <cstddef>
#include <numbers>

#include "shakebal/mechanism.hpp"

namespace oracle {

using shakebal::DecisionVector;
using shakebal::MechanismConfig;

inline double sum_fx(const MechanismConfig& c, const DecisionVector& d, double t) {
    const double w2 = c.omega * c.omega;
    double s = 0.0;
    s += c.m_p * c.R * w2 * (std::cos(t) + (c.R / c.L) * std::cos(2.0 * t));
    s += c.m_c * c.R * w2 * std::cos(t);
    s += c.m_0 * c.R_0 * w2 * std::cos(t + c.alpha);
    s += d.m_1() * c.r_1 * w2 * std::cos(t + d.phi_1());
    s += d.m_2() * c.r_2 * w2 * std::cos(t + d.phi_2());
    s += c.m_p * c.R * w2 * (std::cos(t + c.theta_0) + (c.R / c.L) * std::cos(2.0 * (t + c.theta_0)));
    s += c.m_c * c.R * w2 * std::cos(t + c.theta_0);
    return s;
}

inline double sum_fy(const MechanismConfig& c, const DecisionVector& d, double t) {
    const double w2 = c.omega * c.omega;
    double s = 0.0;
    s += c.m_c * c.R * w2 * std::sin(t);
    s += c.m_0 * c.R_0 * w2 * std::sin(t + c.alpha);
    s += d.m_1() * c.r_1 * w2 * std::sin(t + d.phi_1());
    s += d.m_2() * c.r_2 * w2 * std::sin(t + d.phi_2());
    s += c.m_c * c.R * w2 * std::sin(t + c.theta_0);
    return s;
}

inline double sum_my(const MechanismConfig& c, const DecisionVector& d, double t) {
    const double w2 = c.omega * c.omega;
    double s = 0.0;
    s += (c.m_0 * c.R_0 * w2 * std::cos(t + c.alpha) + d.m_1() * c.r_1 * w2 * std::cos(t + d.phi_1())) * c.a_1;
    s += (d.m_2() * c.r_2 * w2 * std::cos(t + d.phi_2())) * (c.a_1 + c.a_2);
    s += (c.m_p * c.R * w2 * (std::cos(t + c.theta_0) + (c.R / c.L) * std::cos(2.0 * (t + c.theta_0)))) *
         (2.0 * c.a_1 + c.a_2);
    s += (c.m_c * c.R * w2 * std::cos(t + c.theta_0)) * (2.0 * c.a_1 + c.a_2);
    return s;
}

inline double sum_mx(const MechanismConfig& c, const DecisionVector& d, double t) {
    const double w2 = c.omega * c.omega;
    double s = 0.0;
    s += (c.m_0 * c.R_0 * w2 * std::sin(t + c.alpha) + d.m_1() * c.r_1 * w2 * std::sin(t + d.phi_1())) * c.a_1;
    s += (d.m_2() * c.r_2 * w2 * std::sin(t + d.phi_2())) * (c.a_1 + c.a_2);
    s += (c.m_c * c.R * w2 * std::sin(t + c.theta_0)) * (2.0 * c.a_1 + c.a_2);
    return s;
}

/// Sum of magnitudes of the individual terms; the scale for relative checks.
inline double fx_scale(const MechanismConfig& c, const DecisionVector& d) {
    const double w2 = c.omega * c.omega;
    return w2 * (2.0 * c.m_p * c.R * (1.0 + c.R / c.L) + 2.0 * c.m_c * c.R + c.m_0 * c.R_0 + d.m_1() * c.r_1 +
                 d.m_2() * c.r_2);
}

/// Brute-force polar areas on a dense midpoint grid, independent of the
/// library's quadrature.
struct Areas {
    double f = 0.0, c1 = 0.0, c2 = 0.0;
};

inline Areas brute_force_areas(const MechanismConfig& c, const DecisionVector& d, std::size_t n) {
    const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
    Areas a;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = (static_cast<double>(k) + 0.5) * h;
        const double r = std::abs(sum_fx(c, d, t)) + std::abs(sum_fy(c, d, t));
        a.f += r * r;
        a.c1 += sum_mx(c, d, t) * sum_mx(c, d, t);
        a.c2 += sum_my(c, d, t) * sum_my(c, d, t);
    }
    a.f *= 0.5 * h;
    a.c1 *= 0.5 * h;
    a.c2 *= 0.5 * h;
    return a;
}

}  // namespace oracle
