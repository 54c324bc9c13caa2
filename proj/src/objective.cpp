#include "shakebal/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "shakebal/harmonic.hpp"
#include "shakebal/rng.hpp"
#include "shakebal/simd/profile_kernels.hpp"

namespace shakebal {

Bounds ObjectiveSpec::default_bounds(const MechanismConfig& cfg) {
    return {{0.0, 0.0, 0.0, 0.0}, {50.0 * cfg.m_0, 50.0 * cfg.m_0, kTwoPi, kTwoPi}};
}

void ObjectiveSpec::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("ObjectiveSpec: " + what); };
    if (n_samples < 8) fail("n_samples must be >= 8");
    if (!(c1_max > 0.0) || !std::isfinite(c1_max)) fail("c1_max must be > 0");
    if (!(c2_max > 0.0) || !std::isfinite(c2_max)) fail("c2_max must be > 0");
    if (!(penalty_weight >= 0.0) || !std::isfinite(penalty_weight)) fail("penalty_weight must be >= 0");
    bounds.validate();
    if (bounds.dim() != 4) fail("bounds must have 4 dimensions (m_1, m_2, phi_1, phi_2)");
    if (bounds.lower[0] < 0.0 || bounds.lower[1] < 0.0) fail("counterweight mass bounds must be >= 0");
}

double polar_area(std::span<const double> radii) {
    if (radii.empty()) throw std::invalid_argument("polar_area: no samples");
    double sum = 0.0;
    for (double r : radii) {
        if (!std::isfinite(r) || r < 0.0)
            throw std::invalid_argument("polar_area: radii must be finite and >= 0");
        sum += r * r;
    }
    return 0.5 * (kTwoPi / static_cast<double>(radii.size())) * sum;
}

namespace {

ProfileAreas areas_on(const simd::ProfileBasis& basis, const MechanismConfig& cfg, const DecisionVector& dv,
                      Quadrature quadrature) {
    const std::size_t n = basis.size();
    thread_local std::vector<double> p1;
    thread_local std::vector<double> p2;
    p1.resize(n);
    p2.resize(n);

    const HarmonicSet h = harmonic_profile(cfg, dv);
    const simd::ProfileSums sums = simd::profile_sums(basis, h, p1, p2);
    const double half_step = 0.5 * kTwoPi / static_cast<double>(n);

    ProfileAreas out;
    out.c1 = half_step * sums.p3_sq;
    out.c2 = half_step * sums.p4_sq;
    if (quadrature == Quadrature::rectangle) {
        out.f = half_step * sums.radius_sq;
    } else {
        std::vector<double> breaks = sign_changes(h[0], p1.data(), n);
        const std::vector<double> more = sign_changes(h[1], p2.data(), n);
        breaks.insert(breaks.end(), more.begin(), more.end());
        out.f = half_step * (sums.p1_sq + sums.p2_sq) + integrate_abs_product(h[0], h[1], std::move(breaks));
    }
    return out;
}

}  // namespace

BalancingObjective::BalancingObjective(const MechanismConfig& cfg, const ObjectiveSpec& spec)
    : cfg_(cfg.normalized()), spec_(spec) {
    cfg_.validate();
    spec_.validate();
    basis_ = std::make_shared<const simd::ProfileBasis>(spec_.n_samples);
}

ProfileAreas BalancingObjective::areas(const DecisionVector& dv) const {
    return areas_on(*basis_, cfg_, dv, spec_.quadrature);
}

CostBreakdown BalancingObjective::evaluate(const DecisionVector& dv) const {
    const ProfileAreas a = areas(dv);
    CostBreakdown out;
    out.raw_cost = a.f;
    out.c1 = a.c1;
    out.c2 = a.c2;
    out.violation = std::max(0.0, a.c1 - spec_.c1_max) / spec_.c1_max +
                    std::max(0.0, a.c2 - spec_.c2_max) / spec_.c2_max;
    out.total = out.violation > 0.0 ? a.f + spec_.penalty_weight * out.violation : a.f;
    return out;
}

double BalancingObjective::operator()(std::span<const double> x) const {
    if (x.size() != 4) throw std::invalid_argument("BalancingObjective: expected a 4-component point");
    return evaluate(DecisionVector(x[0], x[1], x[2], x[3])).total;
}

CostBreakdown evaluate(const MechanismConfig& cfg, const DecisionVector& dv, const ObjectiveSpec& spec) {
    return BalancingObjective(cfg, spec).evaluate(dv);
}

ProfileAreas profile_areas(const MechanismConfig& cfg, const DecisionVector& dv, std::size_t n_samples,
                           Quadrature quadrature) {
    if (n_samples < 8) throw std::invalid_argument("profile_areas: n_samples must be >= 8");
    const MechanismConfig c = cfg.normalized();
    c.validate();
    const simd::ProfileBasis basis(n_samples);
    return areas_on(basis, c, dv, quadrature);
}

CalibratedLimits calibrate_bounds(const MechanismConfig& cfg, const Bounds& bounds, std::size_t n_random,
                                  double fraction, std::uint64_t seed, std::size_t n_samples) {
    if (n_random == 0) throw std::invalid_argument("calibrate_bounds: n_random must be >= 1");
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw std::invalid_argument("calibrate_bounds: fraction must be in (0, 1]");
    bounds.validate();
    if (bounds.dim() != 4) throw std::invalid_argument("calibrate_bounds: bounds must have 4 dimensions");
    if (n_samples < 8) throw std::invalid_argument("calibrate_bounds: n_samples must be >= 8");

    const MechanismConfig c = cfg.normalized();
    c.validate();
    const simd::ProfileBasis basis(n_samples);
    CounterRng rng = make_rng(seed, Stream::calibration);
    double max_c1 = 0.0;
    double max_c2 = 0.0;
    for (std::size_t i = 0; i < n_random; ++i) {
        double x[4];
        for (std::size_t j = 0; j < 4; ++j) x[j] = rng.uniform(bounds.lower[j], bounds.upper[j]);
        // Moment areas only: quadrature choice for f is irrelevant here.
        const ProfileAreas a = areas_on(basis, c, DecisionVector(x[0], x[1], x[2], x[3]), Quadrature::rectangle);
        max_c1 = std::max(max_c1, a.c1);
        max_c2 = std::max(max_c2, a.c2);
    }
    return {fraction * max_c1, fraction * max_c2};
}

}  // namespace shakebal
