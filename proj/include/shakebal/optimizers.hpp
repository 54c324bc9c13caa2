#pragma once

// Seeded, box-bounded, derivative-free minimizers sharing one callback
// interface: particle swarm (PSO), artificial bee colony (ABC), binary
// genetic algorithm (BGA) and the GA/PSO breeding swarm (HGAPSO).
//
// Every run is single-threaded and a pure function of
// (objective, bounds, params, seed). Randomness comes from CounterRng
// sub-streams, one per algorithmic phase.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "shakebal/bounds.hpp"
#include "shakebal/rng.hpp"

namespace shakebal {

using ObjectiveFn = std::function<double(std::span<const double>)>;

/// Raised when the objective returns NaN or infinity.
class OptimizerError : public std::runtime_error {
public:
    OptimizerError(const std::string& what, std::vector<double> point)
        : std::runtime_error(what), point_(std::move(point)) {}
    const std::vector<double>& point() const noexcept { return point_; }

private:
    std::vector<double> point_;
};

struct RunResult {
    std::vector<double> best_x;
    double best_f = 0.0;
    /// Best-so-far value after initialization (index 0) and after each
    /// iteration; iterations + 1 entries.
    std::vector<double> trace;
    std::size_t evaluations = 0;
    double wall_time_s = 0.0;
    std::uint64_t seed = 0;
    /// Cumulative wall-clock seconds at the end of iteration 1..iterations.
    std::vector<double> iteration_seconds;
    /// ABC scout resets (each costs one evaluation); zero elsewhere.
    std::size_t restarts = 0;
};

/// Optional diagnostics. Hooks never consume random draws.
struct RunObserver {
    /// ABC onlooker probabilities, once per iteration.
    std::function<void(std::span<const double>)> on_selection_probabilities;
};

// ---------------------------------------------------------------------------
// PSO

struct PsoParams {
    std::size_t population = 50;
    std::size_t iterations = 300;
    double c1 = 0.25;  ///< cognitive acceleration (toward the personal best)
    double c2 = 0.15;  ///< social acceleration (toward the global best)
    double w_max = 0.9;
    double w_min = 0.4;
    double v_max_fraction = 0.5;  ///< velocity clamp as a fraction of box width

    void validate() const;
};

/// Linearly annealed inertia weight w_max - (w_max - w_min) / iter_max * iter.
/// Hits w_max at iter 0 and w_min at iter_max exactly.
double inertia_weight(double w_max, double w_min, std::size_t iter_max, std::size_t iter);

struct Particle {
    std::vector<double> x;
    std::vector<double> v;
    double f = 0.0;
    std::vector<double> best_x;
    double best_f = 0.0;
};

/// Swarm state advanced one iteration at a time. optimize_pso drives it;
/// HGAPSO reuses the move rule.
class ParticleSwarm {
public:
    /// Random positions in the box and velocities in +-v_max.
    ParticleSwarm(ObjectiveFn objective, Bounds bounds, PsoParams params, std::uint64_t seed);

    /// Starts from explicit particle positions and velocities (evaluated here).
    static ParticleSwarm from_state(ObjectiveFn objective, Bounds bounds, PsoParams params,
                                    std::uint64_t seed, std::vector<Particle> particles);

    /// Iteration `iter` (0-based) of the schedule: move every particle,
    /// evaluate, then refresh personal and global bests.
    void step(std::size_t iter);

    const std::vector<Particle>& particles() const noexcept { return particles_; }
    const std::vector<double>& gbest_x() const noexcept { return gbest_x_; }
    double gbest_f() const noexcept { return gbest_f_; }
    std::size_t evaluations() const noexcept { return evaluations_; }

private:
    ParticleSwarm(ObjectiveFn objective, Bounds bounds, PsoParams params, std::uint64_t seed, int);
    void evaluate_all();
    void refresh_bests();

    ObjectiveFn objective_;
    Bounds bounds_;
    PsoParams params_;
    CounterRng velocity_rng_;
    std::vector<Particle> particles_;
    std::vector<double> gbest_x_;
    double gbest_f_ = 0.0;
    std::size_t evaluations_ = 0;
};

/// One velocity/position update of a single particle:
///   v <- w v + c1 r1 (pbest - x) + c2 r2 (gbest - x)   (r1, r2 per dimension)
///   x <- x + v
/// with v clamped to +-v_max_fraction * width and x clamped to the box.
void pso_move(Particle& p, std::span<const double> gbest, double w, const PsoParams& params,
              const Bounds& bounds, CounterRng& rng);

RunResult optimize_pso(const ObjectiveFn& objective, const Bounds& bounds, const PsoParams& params,
                       std::uint64_t seed, const RunObserver* observer = nullptr);

// ---------------------------------------------------------------------------
// ABC

struct AbcParams {
    std::size_t food_sources = 25;  ///< SN; the colony holds 2 SN bees
    std::size_t iterations = 300;
    std::size_t limit = 100;  ///< failed trials before a source is abandoned

    void validate() const;
};

/// 1 / (1 + f) for f >= 0, 1 + |f| otherwise.
double abc_fitness(double cost) noexcept;

/// fit_i / sum(fit).
std::vector<double> selection_probabilities(std::span<const double> fitness);

/// lower + u (upper - lower), the scout re-initialization.
inline double scout_position(double lower, double upper, double u) noexcept {
    return lower + u * (upper - lower);
}

RunResult optimize_abc(const ObjectiveFn& objective, const Bounds& bounds, const AbcParams& params,
                       std::uint64_t seed, const RunObserver* observer = nullptr);

// ---------------------------------------------------------------------------
// BGA

struct BgaParams {
    std::size_t population = 50;  ///< must be even
    std::size_t iterations = 300;
    std::size_t bits_per_variable = 16;
    std::size_t crossover_points = 2;
    double crossover_prob = 0.9;
    /// Negative means 1 / (bits_per_variable * dimension).
    double mutation_prob_per_bit = -1.0;
    std::size_t elitism = 1;

    void validate() const;
    double mutation_rate(std::size_t dim) const noexcept;
};

using Chromosome = std::vector<std::uint8_t>;  ///< one 0/1 entry per bit

/// Fixed-point binary encoding of a box: each variable maps linearly from
/// [lower_j, upper_j] onto [0, 2^bits - 1], most significant bit first.
class BinaryCodec {
public:
    BinaryCodec(Bounds bounds, std::size_t bits_per_variable);

    std::size_t length() const noexcept { return bounds_.dim() * bits_; }
    std::vector<double> decode(const Chromosome& c) const;
    /// Nearest representable grid point; inputs outside the box are clamped.
    Chromosome encode(std::span<const double> x) const;

private:
    Bounds bounds_;
    std::size_t bits_;
    double levels_;
};

/// Reproduction operators shared by BGA and HGAPSO.
struct GeneticOperators {
    std::size_t crossover_points = 2;
    double crossover_prob = 0.9;
    double mutation_prob = 0.0;

    /// Index into `ranked` chosen with linear rank weights (best = N, worst = 1).
    std::size_t select(std::span<const std::size_t> ranked, CounterRng& rng) const;
    /// Multipoint crossover in place with probability crossover_prob.
    void crossover(Chromosome& a, Chromosome& b, CounterRng& rng) const;
    void mutate(Chromosome& c, CounterRng& rng) const;
};

/// Indices sorted by ascending cost, ties by index.
std::vector<std::size_t> rank_order(std::span<const double> costs);

class BinaryGa {
public:
    BinaryGa(ObjectiveFn objective, Bounds bounds, BgaParams params, std::uint64_t seed);
    static BinaryGa from_population(ObjectiveFn objective, Bounds bounds, BgaParams params,
                                    std::uint64_t seed, std::vector<Chromosome> population);

    void step();

    const std::vector<Chromosome>& population() const noexcept { return population_; }
    const std::vector<double>& costs() const noexcept { return costs_; }
    const std::vector<double>& best_x() const noexcept { return best_x_; }
    double best_f() const noexcept { return best_f_; }
    std::size_t evaluations() const noexcept { return evaluations_; }
    const BinaryCodec& codec() const noexcept { return codec_; }

private:
    BinaryGa(ObjectiveFn objective, Bounds bounds, BgaParams params, std::uint64_t seed, int);
    double evaluate(const Chromosome& c);

    ObjectiveFn objective_;
    BgaParams params_;
    BinaryCodec codec_;
    GeneticOperators ops_;
    CounterRng selection_rng_, crossover_rng_, mutation_rng_;
    std::vector<Chromosome> population_;
    std::vector<double> costs_;
    std::vector<double> best_x_;
    double best_f_ = 0.0;
    std::size_t evaluations_ = 0;
};

RunResult optimize_bga(const ObjectiveFn& objective, const Bounds& bounds, const BgaParams& params,
                       std::uint64_t seed, const RunObserver* observer = nullptr);

// ---------------------------------------------------------------------------
// HGAPSO

struct HgapsoParams {
    std::size_t population = 50;
    std::size_t iterations = 300;
    double breeding_ratio = 0.5;  ///< fraction of the ranked population enhanced by PSO
    PsoParams pso;  ///< operator settings only; population/iterations ignored
    BgaParams bga;  ///< operator settings only; population/iterations/elitism ignored

    void validate() const;
    /// ceil(breeding_ratio * population)
    std::size_t elite_count() const noexcept;
};

RunResult optimize_hgapso(const ObjectiveFn& objective, const Bounds& bounds, const HgapsoParams& params,
                          std::uint64_t seed, const RunObserver* observer = nullptr);

}  // namespace shakebal
