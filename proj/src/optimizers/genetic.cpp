#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "run_support.hpp"

namespace shakebal {

void BgaParams::validate() const {
    detail::require(population >= 2 && population % 2 == 0, "BgaParams: population must be even and >= 2");
    detail::require(iterations >= 1, "BgaParams: iterations must be >= 1");
    detail::require(bits_per_variable >= 8 && bits_per_variable <= 32,
                    "BgaParams: bits_per_variable must be in [8, 32]");
    detail::require(crossover_points >= 1, "BgaParams: crossover_points must be >= 1");
    detail::require(crossover_prob >= 0.0 && crossover_prob <= 1.0, "BgaParams: crossover_prob must be in [0, 1]");
    detail::require(mutation_prob_per_bit <= 1.0 && std::isfinite(mutation_prob_per_bit),
                    "BgaParams: mutation_prob_per_bit must be <= 1 (negative selects the default)");
    detail::require(elitism < population, "BgaParams: elitism must be < population");
}

double BgaParams::mutation_rate(std::size_t dim) const noexcept {
    if (mutation_prob_per_bit >= 0.0) return mutation_prob_per_bit;
    return 1.0 / static_cast<double>(bits_per_variable * dim);
}

BinaryCodec::BinaryCodec(Bounds bounds, std::size_t bits_per_variable)
    : bounds_(std::move(bounds)), bits_(bits_per_variable) {
    bounds_.validate();
    detail::require(bits_ >= 1 && bits_ <= 32, "BinaryCodec: bits_per_variable must be in [1, 32]");
    levels_ = static_cast<double>((std::uint64_t{1} << bits_) - 1);
}

std::vector<double> BinaryCodec::decode(const Chromosome& c) const {
    detail::require(c.size() == length(), "BinaryCodec: chromosome length mismatch");
    std::vector<double> x(bounds_.dim());
    for (std::size_t j = 0; j < x.size(); ++j) {
        std::uint64_t v = 0;
        for (std::size_t b = 0; b < bits_; ++b) v = (v << 1) | (c[j * bits_ + b] & 1u);
        const double t = static_cast<double>(v) / levels_;
        if (v == 0) x[j] = bounds_.lower[j];
        else if (t == 1.0) x[j] = bounds_.upper[j];
        else x[j] = std::min(bounds_.lower[j] + t * bounds_.width(j), bounds_.upper[j]);
    }
    return x;
}

Chromosome BinaryCodec::encode(std::span<const double> x) const {
    detail::require(x.size() == bounds_.dim(), "BinaryCodec: point dimension mismatch");
    Chromosome c(length());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double width = bounds_.width(j);
        const double t = width > 0.0 ? std::clamp((x[j] - bounds_.lower[j]) / width, 0.0, 1.0) : 0.0;
        const auto v = static_cast<std::uint64_t>(std::llround(t * levels_));
        for (std::size_t b = 0; b < bits_; ++b) c[j * bits_ + b] = static_cast<std::uint8_t>((v >> (bits_ - 1 - b)) & 1u);
    }
    return c;
}

std::vector<std::size_t> rank_order(std::span<const double> costs) {
    std::vector<std::size_t> idx(costs.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
    return idx;
}

std::size_t GeneticOperators::select(std::span<const std::size_t> ranked, CounterRng& rng) const {
    // Weights N, N-1, ..., 1 sum to N (N + 1) / 2.
    const std::size_t n = ranked.size();
    const double total = 0.5 * static_cast<double>(n) * static_cast<double>(n + 1);
    const double u = rng.uniform() * total;
    double cumulative = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        cumulative += static_cast<double>(n - r);
        if (u < cumulative) return ranked[r];
    }
    return ranked[n - 1];
}

void GeneticOperators::crossover(Chromosome& a, Chromosome& b, CounterRng& rng) const {
    if (rng.uniform() >= crossover_prob) return;
    const std::size_t length = a.size();
    if (length < 2) return;
    const std::size_t points = std::min(crossover_points, length - 1);
    // Distinct cut positions in [1, length - 1].
    std::vector<std::size_t> cuts;
    cuts.reserve(points);
    while (cuts.size() < points) {
        const std::size_t c = 1 + rng.below(length - 1);
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(length);
    bool swap = false;
    std::size_t begin = 0;
    for (std::size_t end : cuts) {
        if (swap) std::swap_ranges(a.begin() + begin, a.begin() + end, b.begin() + begin);
        swap = !swap;
        begin = end;
    }
}

void GeneticOperators::mutate(Chromosome& c, CounterRng& rng) const {
    if (mutation_prob <= 0.0) return;
    for (auto& bit : c)
        if (rng.uniform() < mutation_prob) bit ^= 1u;
}

BinaryGa::BinaryGa(ObjectiveFn objective, Bounds bounds, BgaParams params, std::uint64_t seed, int)
    : objective_(std::move(objective)),
      params_(params),
      codec_(std::move(bounds), params.bits_per_variable),
      selection_rng_(make_rng(seed, Stream::selection)),
      crossover_rng_(make_rng(seed, Stream::crossover)),
      mutation_rng_(make_rng(seed, Stream::mutation)),
      best_f_(std::numeric_limits<double>::infinity()) {
    params_.validate();
    ops_.crossover_points = params_.crossover_points;
    ops_.crossover_prob = params_.crossover_prob;
    ops_.mutation_prob = params_.mutation_rate(codec_.length() / params_.bits_per_variable);
}

BinaryGa::BinaryGa(ObjectiveFn objective, Bounds bounds, BgaParams params, std::uint64_t seed)
    : BinaryGa(std::move(objective), std::move(bounds), params, seed, 0) {
    CounterRng init = make_rng(seed, Stream::init);
    population_.resize(params_.population);
    for (Chromosome& c : population_) {
        c.resize(codec_.length());
        for (auto& bit : c) bit = static_cast<std::uint8_t>(init() >> 63);
    }
    costs_.reserve(population_.size());
    for (const Chromosome& c : population_) costs_.push_back(evaluate(c));
}

BinaryGa BinaryGa::from_population(ObjectiveFn objective, Bounds bounds, BgaParams params, std::uint64_t seed,
                                   std::vector<Chromosome> population) {
    params.population = population.size();
    BinaryGa ga(std::move(objective), std::move(bounds), params, seed, 0);
    for (const Chromosome& c : population)
        detail::require(c.size() == ga.codec_.length(), "BinaryGa: chromosome length mismatch");
    ga.population_ = std::move(population);
    for (const Chromosome& c : ga.population_) ga.costs_.push_back(ga.evaluate(c));
    return ga;
}

double BinaryGa::evaluate(const Chromosome& c) {
    const std::vector<double> x = codec_.decode(c);
    const double f = detail::checked_eval(objective_, x, "bga");
    ++evaluations_;
    if (f < best_f_) {
        best_f_ = f;
        best_x_ = x;
    }
    return f;
}

void BinaryGa::step() {
    const std::vector<std::size_t> ranked = rank_order(costs_);
    std::vector<Chromosome> next;
    std::vector<double> next_costs;
    next.reserve(population_.size());
    for (std::size_t e = 0; e < params_.elitism; ++e) {
        next.push_back(population_[ranked[e]]);
        next_costs.push_back(costs_[ranked[e]]);
    }
    while (next.size() < population_.size()) {
        Chromosome a = population_[ops_.select(ranked, selection_rng_)];
        Chromosome b = population_[ops_.select(ranked, selection_rng_)];
        ops_.crossover(a, b, crossover_rng_);
        ops_.mutate(a, mutation_rng_);
        ops_.mutate(b, mutation_rng_);
        next.push_back(std::move(a));
        next_costs.push_back(evaluate(next.back()));
        if (next.size() < population_.size()) {
            next.push_back(std::move(b));
            next_costs.push_back(evaluate(next.back()));
        }
    }
    population_ = std::move(next);
    costs_ = std::move(next_costs);
}

RunResult optimize_bga(const ObjectiveFn& objective, const Bounds& bounds, const BgaParams& params,
                       std::uint64_t seed, const RunObserver*) {
    detail::RunClock clock;
    BinaryGa ga(objective, bounds, params, seed);
    RunResult out;
    out.seed = seed;
    out.trace.reserve(params.iterations + 1);
    out.trace.push_back(ga.best_f());
    for (std::size_t t = 0; t < params.iterations; ++t) {
        ga.step();
        out.trace.push_back(ga.best_f());
        clock.mark();
    }
    out.best_x = ga.best_x();
    out.best_f = ga.best_f();
    out.evaluations = ga.evaluations();
    out.iteration_seconds = clock.take_checkpoints();
    out.wall_time_s = clock.elapsed();
    return out;
}

}  // namespace shakebal
