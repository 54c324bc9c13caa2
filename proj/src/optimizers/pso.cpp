#include <algorithm>
#include <cmath>
#include <limits>

#include "run_support.hpp"

namespace shakebal {

namespace detail {

std::vector<Particle> random_particles(const Bounds& bounds, const PsoParams& params, std::size_t count,
                                       CounterRng& init) {
    const std::size_t d = bounds.dim();
    std::vector<Particle> particles(count);
    for (Particle& p : particles) {
        p.x.resize(d);
        p.v.resize(d);
        for (std::size_t j = 0; j < d; ++j) p.x[j] = init.uniform(bounds.lower[j], bounds.upper[j]);
        for (std::size_t j = 0; j < d; ++j) {
            const double v_max = params.v_max_fraction * bounds.width(j);
            p.v[j] = init.uniform(-v_max, v_max);
        }
    }
    return particles;
}

}  // namespace detail

void PsoParams::validate() const {
    detail::require(population >= 2, "PsoParams: population must be >= 2");
    detail::require(iterations >= 1, "PsoParams: iterations must be >= 1");
    detail::require(std::isfinite(c1) && std::isfinite(c2) && c1 >= 0.0 && c2 >= 0.0,
                    "PsoParams: c1, c2 must be finite and >= 0");
    detail::require(std::isfinite(w_max) && w_max >= w_min && w_min >= 0.0,
                    "PsoParams: require w_max >= w_min >= 0");
    detail::require(v_max_fraction > 0.0 && std::isfinite(v_max_fraction),
                    "PsoParams: v_max_fraction must be > 0");
}

double inertia_weight(double w_max, double w_min, std::size_t iter_max, std::size_t iter) {
    if (iter == 0) return w_max;
    if (iter == iter_max) return w_min;
    return w_max - ((w_max - w_min) / static_cast<double>(iter_max)) * static_cast<double>(iter);
}

void pso_move(Particle& p, std::span<const double> gbest, double w, const PsoParams& params,
              const Bounds& bounds, CounterRng& rng) {
    for (std::size_t j = 0; j < p.x.size(); ++j) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        const double v_max = params.v_max_fraction * bounds.width(j);
        const double v = w * p.v[j] + params.c1 * r1 * (p.best_x[j] - p.x[j]) +
                         params.c2 * r2 * (gbest[j] - p.x[j]);
        p.v[j] = std::clamp(v, -v_max, v_max);
        p.x[j] = std::clamp(p.x[j] + p.v[j], bounds.lower[j], bounds.upper[j]);
    }
}

ParticleSwarm::ParticleSwarm(ObjectiveFn objective, Bounds bounds, PsoParams params, std::uint64_t seed, int)
    : objective_(std::move(objective)),
      bounds_(std::move(bounds)),
      params_(params),
      velocity_rng_(make_rng(seed, Stream::velocity)) {
    // from_state may hold a single particle; the operator settings still apply.
    PsoParams check = params_;
    check.population = std::max<std::size_t>(check.population, 2);
    check.validate();
    bounds_.validate();
}

ParticleSwarm::ParticleSwarm(ObjectiveFn objective, Bounds bounds, PsoParams params, std::uint64_t seed)
    : ParticleSwarm(std::move(objective), std::move(bounds), params, seed, 0) {
    params_.validate();
    CounterRng init = make_rng(seed, Stream::init);
    particles_ = detail::random_particles(bounds_, params_, params_.population, init);
    evaluate_all();
    for (Particle& p : particles_) {
        p.best_x = p.x;
        p.best_f = p.f;
    }
    gbest_f_ = std::numeric_limits<double>::infinity();
    refresh_bests();
}

ParticleSwarm ParticleSwarm::from_state(ObjectiveFn objective, Bounds bounds, PsoParams params,
                                        std::uint64_t seed, std::vector<Particle> particles) {
    detail::require(!particles.empty(), "ParticleSwarm: no particles");
    params.population = particles.size();
    ParticleSwarm swarm(std::move(objective), std::move(bounds), params, seed, 0);
    for (Particle& p : particles) {
        detail::require(p.x.size() == swarm.bounds_.dim() && p.v.size() == swarm.bounds_.dim(),
                        "ParticleSwarm: particle dimension mismatch");
    }
    swarm.particles_ = std::move(particles);
    swarm.evaluate_all();
    for (Particle& p : swarm.particles_) {
        p.best_x = p.x;
        p.best_f = p.f;
    }
    swarm.gbest_f_ = std::numeric_limits<double>::infinity();
    swarm.refresh_bests();
    return swarm;
}

void ParticleSwarm::evaluate_all() {
    for (Particle& p : particles_) {
        p.f = detail::checked_eval(objective_, p.x, "pso");
        ++evaluations_;
    }
}

void ParticleSwarm::refresh_bests() {
    for (Particle& p : particles_) {
        if (p.f < p.best_f) {
            p.best_f = p.f;
            p.best_x = p.x;
        }
        if (p.best_f < gbest_f_) {
            gbest_f_ = p.best_f;
            gbest_x_ = p.best_x;
        }
    }
}

void ParticleSwarm::step(std::size_t iter) {
    const double w = inertia_weight(params_.w_max, params_.w_min, params_.iterations, iter);
    for (Particle& p : particles_) pso_move(p, gbest_x_, w, params_, bounds_, velocity_rng_);
    evaluate_all();
    refresh_bests();
}

RunResult optimize_pso(const ObjectiveFn& objective, const Bounds& bounds, const PsoParams& params,
                       std::uint64_t seed, const RunObserver*) {
    detail::RunClock clock;
    ParticleSwarm swarm(objective, bounds, params, seed);
    RunResult out;
    out.seed = seed;
    out.trace.reserve(params.iterations + 1);
    out.trace.push_back(swarm.gbest_f());
    for (std::size_t t = 0; t < params.iterations; ++t) {
        swarm.step(t);
        out.trace.push_back(swarm.gbest_f());
        clock.mark();
    }
    out.best_x = swarm.gbest_x();
    out.best_f = swarm.gbest_f();
    out.evaluations = swarm.evaluations();
    out.iteration_seconds = clock.take_checkpoints();
    out.wall_time_s = clock.elapsed();
    return out;
}

}  // namespace shakebal
