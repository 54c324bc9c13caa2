#pragma once

// Benchmark protocol: repeated seeded runs per algorithm and iteration
// budget, grouped average/best/worst statistics, and the CSV emitters for
// results, convergence traces, per-iteration timing and polar profiles.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shakebal/mechanism.hpp"
#include "shakebal/objective.hpp"
#include "shakebal/optimizers.hpp"

namespace shakebal {

enum class Algorithm { pso, abc, bga, hgapso };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::pso, Algorithm::abc, Algorithm::bga, Algorithm::hgapso};

std::string_view algorithm_name(Algorithm a) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

struct AlgorithmSettings {
    PsoParams pso;
    AbcParams abc;
    BgaParams bga;
    HgapsoParams hgapso;
};

/// Runs one algorithm with its iteration count replaced by `iterations`.
RunResult run_algorithm(Algorithm a, const ObjectiveFn& objective, const Bounds& bounds,
                        const AlgorithmSettings& settings, std::size_t iterations, std::uint64_t seed);

struct Problem {
    MechanismConfig mechanism;
    ObjectiveSpec objective;  ///< constraint limits must already be set
};

struct ExperimentPlan {
    std::vector<Algorithm> algorithms{std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
    std::vector<std::size_t> iteration_budgets{200, 300};
    std::size_t repeats = 10;
    std::uint64_t base_seed = 1;
    Problem problem;
    AlgorithmSettings settings;

    void validate() const;
};

struct ResultRow {
    Algorithm algorithm = Algorithm::pso;
    std::size_t budget = 0;
    std::size_t experiment = 0;  ///< 1-based
    std::uint64_t seed = 0;
    double m1 = 0.0, m2 = 0.0, phi1 = 0.0, phi2 = 0.0;
    double raw_cost = 0.0, c1 = 0.0, c2 = 0.0, total_cost = 0.0;
    double wall_time_s = 0.0;
    bool ok = true;
    std::string message;  ///< diagnostic for failed runs, not written to CSV
    std::vector<double> trace;
    std::vector<double> iteration_seconds;
};

/// One optimization of the balancing problem, summarized as a row.
/// Failures become rows with ok = false.
ResultRow run_balancing(const Problem& problem, const AlgorithmSettings& settings, Algorithm a,
                        std::size_t iterations, std::uint64_t seed);

/// Rows in (algorithm, budget, repeat) order whatever the completion order.
/// jobs = 0 uses every logical processor.
std::vector<ResultRow> run_plan(const ExperimentPlan& plan, std::size_t jobs = 1);

struct Stat {
    double average = 0.0;
    double best = 0.0;
    double worst = 0.0;
};

struct GroupStats {
    Algorithm algorithm = Algorithm::pso;
    std::size_t budget = 0;
    std::size_t runs = 0;  ///< successful rows in the group
    Stat cost;             ///< over total_cost
    Stat wall_time;
};

using StatsSummary = std::vector<GroupStats>;

/// Mean/min/max per (algorithm, budget) over successful rows, groups in
/// first-appearance order.
StatsSummary summarize(std::span<const ResultRow> rows);

void write_results_csv(std::span<const ResultRow> rows, std::ostream& out);
/// Inverse of write_results_csv for the columns it writes (no traces).
std::vector<ResultRow> read_results_csv(std::istream& in);
void write_summary_csv(const StatsSummary& summary, std::ostream& out);

/// algorithm,seed,iteration,best_cost; one row per (run, iteration).
void write_convergence_csv(std::span<const ResultRow> rows, std::ostream& out);
/// algorithm,seed,iteration,cumulative_seconds. Throws std::runtime_error if
/// a successful row carries no timing checkpoints.
void write_runtime_csv(std::span<const ResultRow> rows, std::ostream& out);

using NamedSolution = std::pair<std::string, DecisionVector>;

/// theta_rad,r_unbalanced,r_<name>... with r = |P1| + |P2|.
void write_polar_csv(const MechanismConfig& cfg, const DecisionVector& unbalanced,
                     std::span<const NamedSolution> solutions, std::size_t n_samples, std::ostream& out);

// File-level emitters. Parent directories are created.
void emit_results(std::span<const ResultRow> rows, const std::filesystem::path& path);
void emit_summary(const StatsSummary& summary, const std::filesystem::path& path);
void emit_convergence(std::span<const ResultRow> rows, const std::filesystem::path& path);
void emit_runtime_growth(std::span<const ResultRow> rows, const std::filesystem::path& path);
void emit_polar(const MechanismConfig& cfg, const DecisionVector& unbalanced,
                std::span<const NamedSolution> solutions, std::size_t n_samples, const std::filesystem::path& path);

/// name,m1,m2,phi1,phi2 (radians).
std::vector<NamedSolution> read_solutions_csv(std::istream& in);

}  // namespace shakebal
