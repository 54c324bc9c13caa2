#include "shakebal/mechanism.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace shakebal {

double wrap_angle(double radians) noexcept {
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    // fmod of a tiny negative value can round back up to exactly 2pi
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double grid_angle(std::size_t k, std::size_t n) noexcept {
    return kTwoPi * static_cast<double>(k) / static_cast<double>(n);
}

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("MechanismConfig: ") + what);
}

}  // namespace

void MechanismConfig::validate() const {
    const double all[] = {m_c, m_p, R, L, omega, m_0, R_0, alpha, a_1, a_2, theta_0, r_1, r_2};
    for (double v : all) require(std::isfinite(v), "all parameters must be finite");
    require(m_c >= 0.0, "m_c must be >= 0");
    require(m_p >= 0.0, "m_p must be >= 0");
    require(m_0 >= 0.0, "m_0 must be >= 0");
    require(R > 0.0, "R must be > 0");
    require(L > 0.0, "L must be > 0");
    require(R_0 > 0.0, "R_0 must be > 0");
    require(r_1 > 0.0, "r_1 must be > 0");
    require(r_2 > 0.0, "r_2 must be > 0");
    require(a_1 > 0.0, "a_1 must be > 0");
    require(a_2 > 0.0, "a_2 must be > 0");
    require(omega > 0.0, "omega must be > 0");
    require(R / L <= 1.0, "R/L must be <= 1");
}

MechanismConfig MechanismConfig::normalized() const {
    MechanismConfig out = *this;
    out.alpha = wrap_angle(alpha);
    out.theta_0 = wrap_angle(theta_0);
    return out;
}

DecisionVector::DecisionVector(double m_1, double m_2, double phi_1, double phi_2)
    : m_1_(m_1), m_2_(m_2), phi_1_(wrap_angle(phi_1)), phi_2_(wrap_angle(phi_2)) {
    if (!(m_1 >= 0.0) || !(m_2 >= 0.0) || !std::isfinite(m_1) || !std::isfinite(m_2))
        throw std::invalid_argument("DecisionVector: counterweight masses must be finite and >= 0");
    if (!std::isfinite(phi_1) || !std::isfinite(phi_2))
        throw std::invalid_argument("DecisionVector: angles must be finite");
}

DecisionVector DecisionVector::from_point(const std::vector<double>& x) {
    if (x.size() != 4) throw std::invalid_argument("DecisionVector: expected 4 components");
    return {x[0], x[1], x[2], x[3]};
}

double force_x(const MechanismConfig& c, const DecisionVector& dv, double theta) {
    const double w2 = c.omega * c.omega;
    const double ratio = c.R / c.L;
    const double t2 = theta + c.theta_0;
    return c.m_p * c.R * w2 * (std::cos(theta) + ratio * std::cos(2.0 * theta))
         + c.m_c * c.R * w2 * std::cos(theta)
         + c.m_0 * c.R_0 * w2 * std::cos(theta + c.alpha)
         + dv.m_1() * c.r_1 * w2 * std::cos(theta + dv.phi_1())
         + dv.m_2() * c.r_2 * w2 * std::cos(theta + dv.phi_2())
         + c.m_p * c.R * w2 * (std::cos(t2) + ratio * std::cos(2.0 * t2))
         + c.m_c * c.R * w2 * std::cos(t2);
}

double force_y(const MechanismConfig& c, const DecisionVector& dv, double theta) {
    const double w2 = c.omega * c.omega;
    return c.m_c * c.R * w2 * std::sin(theta)
         + c.m_0 * c.R_0 * w2 * std::sin(theta + c.alpha)
         + dv.m_1() * c.r_1 * w2 * std::sin(theta + dv.phi_1())
         + dv.m_2() * c.r_2 * w2 * std::sin(theta + dv.phi_2())
         + c.m_c * c.R * w2 * std::sin(theta + c.theta_0);
}

double moment_y(const MechanismConfig& c, const DecisionVector& dv, double theta) {
    const double w2 = c.omega * c.omega;
    const double ratio = c.R / c.L;
    const double t2 = theta + c.theta_0;
    const double far_arm = 2.0 * c.a_1 + c.a_2;
    return (c.m_0 * c.R_0 * w2 * std::cos(theta + c.alpha)
            + dv.m_1() * c.r_1 * w2 * std::cos(theta + dv.phi_1())) * c.a_1
         + (dv.m_2() * c.r_2 * w2 * std::cos(theta + dv.phi_2())) * (c.a_1 + c.a_2)
         + (c.m_p * c.R * w2 * (std::cos(t2) + ratio * std::cos(2.0 * t2))) * far_arm
         + (c.m_c * c.R * w2 * std::cos(t2)) * far_arm;
}

double moment_x(const MechanismConfig& c, const DecisionVector& dv, double theta) {
    const double w2 = c.omega * c.omega;
    const double far_arm = 2.0 * c.a_1 + c.a_2;
    return (c.m_0 * c.R_0 * w2 * std::sin(theta + c.alpha)
            + dv.m_1() * c.r_1 * w2 * std::sin(theta + dv.phi_1())) * c.a_1
         + (dv.m_2() * c.r_2 * w2 * std::sin(theta + dv.phi_2())) * (c.a_1 + c.a_2)
         + (c.m_c * c.R * w2 * std::sin(theta + c.theta_0)) * far_arm;
}

DynamicsSample sample_at(const MechanismConfig& cfg, const DecisionVector& dv, double theta) {
    return {theta, force_x(cfg, dv, theta), force_y(cfg, dv, theta), moment_x(cfg, dv, theta),
            moment_y(cfg, dv, theta)};
}

std::vector<DynamicsSample> sample_profile(const MechanismConfig& cfg, const DecisionVector& dv,
                                           std::size_t n_samples) {
    if (n_samples < 8)
        throw std::invalid_argument("sample_profile: n_samples must be >= 8, got " +
                                    std::to_string(n_samples));
    std::vector<DynamicsSample> out;
    out.reserve(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) out.push_back(sample_at(cfg, dv, grid_angle(k, n_samples)));
    return out;
}

}  // namespace shakebal
