#include "shakebal/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>

namespace shakebal {

double Harmonic2::operator()(double t) const noexcept {
    return a1 * std::cos(t) + b1 * std::sin(t) + a2 * std::cos(2.0 * t) + b2 * std::sin(2.0 * t);
}

namespace {

// k cos(t + phase) = k cos(phase) cos t - k sin(phase) sin t
void add_cos(Harmonic2& h, int order, double k, double phase) {
    const double c = k * std::cos(phase);
    const double s = -k * std::sin(phase);
    if (order == 1) { h.a1 += c; h.b1 += s; }
    else { h.a2 += c; h.b2 += s; }
}

// k sin(t + phase) = k cos(phase) sin t + k sin(phase) cos t
void add_sin(Harmonic2& h, int order, double k, double phase) {
    const double c = k * std::sin(phase);
    const double s = k * std::cos(phase);
    if (order == 1) { h.a1 += c; h.b1 += s; }
    else { h.a2 += c; h.b2 += s; }
}

Harmonic2 scaled(Harmonic2 h, double f) {
    h.a1 *= f; h.b1 *= f; h.a2 *= f; h.b2 *= f;
    return h;
}

Harmonic2 sum(const Harmonic2& x, const Harmonic2& y) {
    return {x.a1 + y.a1, x.b1 + y.b1, x.a2 + y.a2, x.b2 + y.b2};
}

}  // namespace

HarmonicSet harmonic_profile(const MechanismConfig& c, const DecisionVector& dv) {
    const double w2 = c.omega * c.omega;
    const double ratio = c.R / c.L;
    const double k_p = c.m_p * c.R * w2;
    const double k_c = c.m_c * c.R * w2;
    const double k_0 = c.m_0 * c.R_0 * w2;
    const double k_1 = dv.m_1() * c.r_1 * w2;
    const double k_2 = dv.m_2() * c.r_2 * w2;
    const double far_arm = 2.0 * c.a_1 + c.a_2;

    // Grouped by axial plane: plane 1 (first crank-slider), disk 2, disk 3,
    // plane 4 (second crank-slider).
    Harmonic2 slider1_x, crank1_x, crank1_y;
    add_cos(slider1_x, 1, k_p, 0.0);
    add_cos(slider1_x, 2, k_p * ratio, 0.0);
    add_cos(crank1_x, 1, k_c, 0.0);
    add_sin(crank1_y, 1, k_c, 0.0);

    Harmonic2 disk2_x, disk2_y, disk3_x, disk3_y;
    add_cos(disk2_x, 1, k_0, c.alpha);
    add_cos(disk2_x, 1, k_1, dv.phi_1());
    add_sin(disk2_y, 1, k_0, c.alpha);
    add_sin(disk2_y, 1, k_1, dv.phi_1());
    add_cos(disk3_x, 1, k_2, dv.phi_2());
    add_sin(disk3_y, 1, k_2, dv.phi_2());

    Harmonic2 plane4_x, plane4_y;
    add_cos(plane4_x, 1, k_p, c.theta_0);
    add_cos(plane4_x, 2, k_p * ratio, 2.0 * c.theta_0);
    add_cos(plane4_x, 1, k_c, c.theta_0);
    add_sin(plane4_y, 1, k_c, c.theta_0);

    HarmonicSet out;
    out[0] = sum(sum(sum(slider1_x, crank1_x), sum(disk2_x, disk3_x)), plane4_x);
    out[1] = sum(sum(crank1_y, sum(disk2_y, disk3_y)), plane4_y);
    out[2] = sum(sum(scaled(disk2_y, c.a_1), scaled(disk3_y, c.a_1 + c.a_2)), scaled(plane4_y, far_arm));
    out[3] = sum(sum(scaled(disk2_x, c.a_1), scaled(disk3_x, c.a_1 + c.a_2)), scaled(plane4_x, far_arm));
    return out;
}

TrigPoly::TrigPoly(std::size_t degree) : cos_(degree + 1, 0.0), sin_(degree + 1, 0.0) {}

TrigPoly::TrigPoly(const Harmonic2& h) : TrigPoly(2) {
    cos_[1] = h.a1;
    sin_[1] = h.b1;
    cos_[2] = h.a2;
    sin_[2] = h.b2;
}

double TrigPoly::operator()(double t) const noexcept {
    double v = cos_[0];
    for (std::size_t m = 1; m < cos_.size(); ++m) {
        const double mt = static_cast<double>(m) * t;
        v += cos_[m] * std::cos(mt) + sin_[m] * std::sin(mt);
    }
    return v;
}

double TrigPoly::antiderivative(double t) const noexcept {
    double v = cos_[0] * t;
    for (std::size_t m = 1; m < cos_.size(); ++m) {
        const double fm = static_cast<double>(m);
        v += (cos_[m] * std::sin(fm * t) - sin_[m] * std::cos(fm * t)) / fm;
    }
    return v;
}

double TrigPoly::integral(double lo, double hi) const noexcept {
    return antiderivative(hi) - antiderivative(lo);
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out(a.degree() + b.degree());
    for (std::size_t i = 0; i <= a.degree(); ++i) {
        for (std::size_t j = 0; j <= b.degree(); ++j) {
            const double ca = a.cos_[i], sa = a.sin_[i], cb = b.cos_[j], sb = b.sin_[j];
            const std::size_t hi = i + j;
            const std::size_t lo = i > j ? i - j : j - i;
            // sin(i t) sin(j t), with sign of (i - j) for the sin products
            const double sign = i >= j ? 1.0 : -1.0;
            // cos cos = (cos(i-j) + cos(i+j)) / 2
            out.cos_[lo] += 0.5 * ca * cb;
            out.cos_[hi] += 0.5 * ca * cb;
            // sin sin = (cos(i-j) - cos(i+j)) / 2
            out.cos_[lo] += 0.5 * sa * sb;
            out.cos_[hi] -= 0.5 * sa * sb;
            // sin(i) cos(j) = (sin(i+j) + sin(i-j)) / 2
            out.sin_[hi] += 0.5 * sa * cb;
            out.sin_[lo] += 0.5 * sign * sa * cb;
            // cos(i) sin(j) = (sin(i+j) - sin(i-j)) / 2
            out.sin_[hi] += 0.5 * ca * sb;
            out.sin_[lo] -= 0.5 * sign * ca * sb;
        }
    }
    out.sin_[0] = 0.0;
    return out;
}

std::vector<double> sign_changes(const Harmonic2& h, const double* samples, std::size_t n) {
    std::vector<double> roots;
    for (std::size_t k = 0; k < n; ++k) {
        const double lo = grid_angle(k, n);
        const double f_lo = samples[k];
        const double f_hi = samples[(k + 1) % n];
        if (f_lo == 0.0) {
            roots.push_back(lo);
            continue;
        }
        if (f_hi == 0.0 || std::signbit(f_lo) == std::signbit(f_hi)) continue;
        const double hi = grid_angle(k + 1, n);
        boost::math::tools::eps_tolerance<double> tol(52);
        std::uintmax_t max_iter = 64;
        const auto bracket = boost::math::tools::toms748_solve(
            [&h](double t) { return h(t); }, lo, hi, f_lo, f_hi, tol, max_iter);
        const double root = 0.5 * (bracket.first + bracket.second);
        roots.push_back(root >= kTwoPi ? root - kTwoPi : root);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

double integrate_abs_product(const Harmonic2& p, const Harmonic2& q, std::vector<double> breaks) {
    const TrigPoly prod = TrigPoly(p) * TrigPoly(q);
    if (breaks.empty()) return std::fabs(prod.integral(0.0, kTwoPi));
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        total += std::fabs(prod.integral(breaks[i], breaks[i + 1]));
    total += std::fabs(prod.integral(breaks.back(), breaks.front() + kTwoPi));
    return total;
}

}  // namespace shakebal
