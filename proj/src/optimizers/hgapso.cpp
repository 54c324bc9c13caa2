#include <algorithm>
#include <cmath>
#include <limits>

#include "run_support.hpp"

namespace shakebal {

void HgapsoParams::validate() const {
    detail::require(population >= 2, "HgapsoParams: population must be >= 2");
    detail::require(iterations >= 1, "HgapsoParams: iterations must be >= 1");
    detail::require(breeding_ratio > 0.0 && breeding_ratio <= 1.0, "HgapsoParams: breeding_ratio must be in (0, 1]");
    PsoParams p = pso;
    p.population = population;
    p.iterations = iterations;
    p.validate();
    BgaParams g = bga;
    g.population = 2;
    g.iterations = 1;
    g.elitism = 0;
    g.validate();
}

std::size_t HgapsoParams::elite_count() const noexcept {
    const auto n = static_cast<std::size_t>(std::ceil(breeding_ratio * static_cast<double>(population) - 1e-12));
    return std::clamp<std::size_t>(n, 1, population);
}

namespace {

// Breeding swarm: each generation the best ceil(phi N) individuals take one
// PSO step and survive; GA offspring bred from the whole generation fill the
// remaining slots. With phi = 1 the draw sequence is exactly that of
// optimize_pso under the same seed.
class BreedingSwarm {
public:
    BreedingSwarm(const ObjectiveFn& objective, const Bounds& bounds, const HgapsoParams& params, std::uint64_t seed)
        : objective_(objective),
          bounds_(bounds),
          params_(params),
          codec_(bounds, params.bga.bits_per_variable),
          velocity_rng_(make_rng(seed, Stream::velocity)),
          selection_rng_(make_rng(seed, Stream::selection)),
          crossover_rng_(make_rng(seed, Stream::crossover)),
          mutation_rng_(make_rng(seed, Stream::mutation)) {
        ops_.crossover_points = params.bga.crossover_points;
        ops_.crossover_prob = params.bga.crossover_prob;
        ops_.mutation_prob = params.bga.mutation_rate(bounds.dim());
        CounterRng init = make_rng(seed, Stream::init);
        swarm_ = detail::random_particles(bounds, params.pso, params.population, init);
        for (Particle& p : swarm_) {
            p.f = evaluate(p.x);
            p.best_x = p.x;
            p.best_f = p.f;
        }
        refresh_bests();
    }

    void generation(std::size_t iter) {
        const std::size_t n = swarm_.size();
        std::vector<double> costs(n);
        for (std::size_t i = 0; i < n; ++i) costs[i] = swarm_[i].f;
        const std::vector<std::size_t> ranked = rank_order(costs);
        const std::size_t n_elite = params_.elite_count();
        std::vector<bool> elite(n, false);
        for (std::size_t r = 0; r < n_elite; ++r) elite[ranked[r]] = true;

        // Offspring are bred from the generation as it stood before the PSO step.
        std::vector<std::vector<double>> children;
        children.reserve(n - n_elite);
        while (children.size() < n - n_elite) {
            Chromosome a = codec_.encode(swarm_[ops_.select(ranked, selection_rng_)].x);
            Chromosome b = codec_.encode(swarm_[ops_.select(ranked, selection_rng_)].x);
            ops_.crossover(a, b, crossover_rng_);
            ops_.mutate(a, mutation_rng_);
            ops_.mutate(b, mutation_rng_);
            children.push_back(codec_.decode(a));
            if (children.size() < n - n_elite) children.push_back(codec_.decode(b));
        }

        const double w = inertia_weight(params_.pso.w_max, params_.pso.w_min, params_.iterations, iter);
        std::size_t next_child = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Particle& p = swarm_[i];
            if (elite[i]) {
                pso_move(p, gbest_x_, w, params_.pso, bounds_, velocity_rng_);
                p.f = evaluate(p.x);
            } else {
                p.x = std::move(children[next_child++]);
                p.v.assign(p.x.size(), 0.0);
                p.f = evaluate(p.x);
                p.best_x = p.x;
                p.best_f = p.f;
            }
        }
        refresh_bests();
    }

    double gbest_f() const noexcept { return gbest_f_; }
    const std::vector<double>& gbest_x() const noexcept { return gbest_x_; }
    std::size_t evaluations() const noexcept { return evaluations_; }

private:
    double evaluate(const std::vector<double>& x) {
        ++evaluations_;
        return detail::checked_eval(objective_, x, "hgapso");
    }

    void refresh_bests() {
        for (Particle& p : swarm_) {
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

    const ObjectiveFn& objective_;
    const Bounds& bounds_;
    const HgapsoParams& params_;
    BinaryCodec codec_;
    GeneticOperators ops_;
    CounterRng velocity_rng_, selection_rng_, crossover_rng_, mutation_rng_;
    std::vector<Particle> swarm_;
    std::vector<double> gbest_x_;
    double gbest_f_ = std::numeric_limits<double>::infinity();
    std::size_t evaluations_ = 0;
};

}  // namespace

RunResult optimize_hgapso(const ObjectiveFn& objective, const Bounds& bounds, const HgapsoParams& params,
                          std::uint64_t seed, const RunObserver*) {
    params.validate();
    bounds.validate();
    detail::RunClock clock;
    BreedingSwarm swarm(objective, bounds, params, seed);
    RunResult out;
    out.seed = seed;
    out.trace.reserve(params.iterations + 1);
    out.trace.push_back(swarm.gbest_f());
    for (std::size_t t = 0; t < params.iterations; ++t) {
        swarm.generation(t);
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
