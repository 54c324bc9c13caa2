#include <algorithm>
#include <cmath>
#include <limits>

#include "run_support.hpp"

namespace shakebal {

void AbcParams::validate() const {
    detail::require(food_sources >= 2, "AbcParams: food_sources must be >= 2");
    detail::require(iterations >= 1, "AbcParams: iterations must be >= 1");
    detail::require(limit >= 1, "AbcParams: limit must be >= 1");
}

double abc_fitness(double cost) noexcept {
    return cost >= 0.0 ? 1.0 / (1.0 + cost) : 1.0 + std::fabs(cost);
}

std::vector<double> selection_probabilities(std::span<const double> fitness) {
    double total = 0.0;
    for (double f : fitness) total += f;
    if (!(total > 0.0)) throw std::invalid_argument("selection_probabilities: total fitness must be > 0");
    std::vector<double> p(fitness.size());
    for (std::size_t i = 0; i < fitness.size(); ++i) p[i] = fitness[i] / total;
    return p;
}

namespace {

struct FoodSource {
    std::vector<double> x;
    double f = 0.0;
    std::size_t trials = 0;
};

class Colony {
public:
    Colony(const ObjectiveFn& objective, const Bounds& bounds, const AbcParams& params, std::uint64_t seed)
        : objective_(objective),
          bounds_(bounds),
          params_(params),
          employed_rng_(make_rng(seed, Stream::employed)),
          onlooker_rng_(make_rng(seed, Stream::onlooker)),
          scout_rng_(make_rng(seed, Stream::scout)) {
        CounterRng init = make_rng(seed, Stream::init);
        sources_.resize(params.food_sources);
        for (FoodSource& s : sources_) {
            s.x.resize(bounds.dim());
            for (std::size_t j = 0; j < bounds.dim(); ++j)
                s.x[j] = scout_position(bounds.lower[j], bounds.upper[j], init.uniform());
            s.f = evaluate(s.x);
        }
    }

    void employed_phase() {
        for (std::size_t i = 0; i < sources_.size(); ++i) explore(i, employed_rng_);
    }

    void onlooker_phase(const RunObserver* observer) {
        std::vector<double> fitness(sources_.size());
        for (std::size_t i = 0; i < sources_.size(); ++i) fitness[i] = abc_fitness(sources_[i].f);
        const std::vector<double> prob = selection_probabilities(fitness);
        if (observer != nullptr && observer->on_selection_probabilities) observer->on_selection_probabilities(prob);

        for (std::size_t n = 0; n < sources_.size(); ++n) {
            const double u = onlooker_rng_.uniform();
            std::size_t pick = sources_.size() - 1;
            double cumulative = 0.0;
            for (std::size_t i = 0; i < prob.size(); ++i) {
                cumulative += prob[i];
                if (u < cumulative) {
                    pick = i;
                    break;
                }
            }
            explore(pick, onlooker_rng_);
        }
    }

    void scout_phase() {
        for (FoodSource& s : sources_) {
            if (s.trials <= params_.limit) continue;
            for (std::size_t j = 0; j < bounds_.dim(); ++j)
                s.x[j] = scout_position(bounds_.lower[j], bounds_.upper[j], scout_rng_.uniform());
            s.f = evaluate(s.x);
            s.trials = 0;
            ++restarts_;
        }
    }

    double best_f() const noexcept { return best_f_; }
    const std::vector<double>& best_x() const noexcept { return best_x_; }
    std::size_t evaluations() const noexcept { return evaluations_; }
    std::size_t restarts() const noexcept { return restarts_; }

private:
    double evaluate(const std::vector<double>& x) {
        const double f = detail::checked_eval(objective_, x, "abc");
        ++evaluations_;
        if (f < best_f_) {
            best_f_ = f;
            best_x_ = x;
        }
        return f;
    }

    // v_ij = x_ij + phi (x_ij - x_kj) on one random dimension, greedy accept.
    void explore(std::size_t i, CounterRng& rng) {
        const std::size_t j = rng.below(bounds_.dim());
        std::size_t k = rng.below(sources_.size() - 1);
        if (k >= i) ++k;
        const double phi = rng.uniform(-1.0, 1.0);
        FoodSource& s = sources_[i];
        std::vector<double> candidate = s.x;
        candidate[j] = std::clamp(s.x[j] + phi * (s.x[j] - sources_[k].x[j]), bounds_.lower[j], bounds_.upper[j]);
        const double f = evaluate(candidate);
        if (f < s.f) {
            s.x = std::move(candidate);
            s.f = f;
            s.trials = 0;
        } else {
            ++s.trials;
        }
    }

    const ObjectiveFn& objective_;
    const Bounds& bounds_;
    const AbcParams& params_;
    CounterRng employed_rng_, onlooker_rng_, scout_rng_;
    std::vector<FoodSource> sources_;
    std::vector<double> best_x_;
    double best_f_ = std::numeric_limits<double>::infinity();
    std::size_t evaluations_ = 0;
    std::size_t restarts_ = 0;
};

}  // namespace

RunResult optimize_abc(const ObjectiveFn& objective, const Bounds& bounds, const AbcParams& params,
                       std::uint64_t seed, const RunObserver* observer) {
    params.validate();
    bounds.validate();
    detail::RunClock clock;
    Colony colony(objective, bounds, params, seed);
    RunResult out;
    out.seed = seed;
    out.trace.reserve(params.iterations + 1);
    out.trace.push_back(colony.best_f());
    for (std::size_t t = 0; t < params.iterations; ++t) {
        colony.employed_phase();
        colony.onlooker_phase(observer);
        colony.scout_phase();
        out.trace.push_back(colony.best_f());
        clock.mark();
    }
    out.best_x = colony.best_x();
    out.best_f = colony.best_f();
    out.evaluations = colony.evaluations();
    out.restarts = colony.restarts();
    out.iteration_seconds = clock.take_checkpoints();
    out.wall_time_s = clock.elapsed();
    return out;
}

}  // namespace shakebal
