#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "shakebal/bench.hpp"
#include "shakebal/config.hpp"
#include "shakebal/csv.hpp"

namespace fs = std::filesystem;

namespace shakebal::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

AppConfig load(const std::string& path) {
    return path.empty() ? parse_config_text("", "<defaults>") : parse_config(path);
}

// Existing outputs are only replaced with --force.
void claim_outputs(const std::vector<fs::path>& paths, bool force) {
    for (const fs::path& p : paths) {
        if (fs::exists(p) && !force)
            throw UsageError(p.string() + " already exists (use --force to overwrite)");
    }
    for (const fs::path& p : paths)
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

std::string fmt(double v) { return csv::format_double(v); }

struct BalanceArgs {
    std::string config;
    std::string algo = "pso";
    std::optional<std::size_t> iters;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::size_t samples = 360;
    bool force = false;
};

int cmd_balance(const BalanceArgs& a, std::ostream& out) {
    const AppConfig cfg = load(a.config);
    const auto algo = parse_algorithm(a.algo);
    if (!algo) throw UsageError("unknown algorithm '" + a.algo + "'");
    std::size_t iterations = 0;
    switch (*algo) {
        case Algorithm::pso: iterations = cfg.algorithms.pso.iterations; break;
        case Algorithm::abc: iterations = cfg.algorithms.abc.iterations; break;
        case Algorithm::bga: iterations = cfg.algorithms.bga.iterations; break;
        case Algorithm::hgapso: iterations = cfg.algorithms.hgapso.iterations; break;
    }
    if (a.iters) iterations = *a.iters;
    if (iterations == 0) throw UsageError("--iters must be >= 1");
    if (a.samples < 8) throw UsageError("--samples must be >= 8");
    const std::uint64_t seed = a.seed.value_or(cfg.bench.base_seed);

    const fs::path dir(a.out);
    claim_outputs({dir / "convergence.csv", dir / "polar.csv"}, a.force);

    const Problem problem = resolve_problem(cfg);
    ResultRow row = run_balancing(problem, cfg.algorithms, *algo, iterations, seed);
    row.experiment = 1;
    if (!row.ok) throw RunFailure(row.message);

    const BalancingObjective objective(problem.mechanism, problem.objective);
    const CostBreakdown unbalanced = objective.evaluate(DecisionVector::zero());

    out << "algorithm      " << algorithm_name(row.algorithm) << '\n'
        << "iterations     " << iterations << '\n'
        << "seed           " << seed << '\n'
        << "m1             " << fmt(row.m1) << '\n'
        << "m2             " << fmt(row.m2) << '\n'
        << "phi1_rad       " << fmt(row.phi1) << '\n'
        << "phi2_rad       " << fmt(row.phi2) << '\n'
        << "raw_cost       " << fmt(row.raw_cost) << '\n'
        << "c1             " << fmt(row.c1) << "  (limit " << fmt(problem.objective.c1_max) << ")\n"
        << "c2             " << fmt(row.c2) << "  (limit " << fmt(problem.objective.c2_max) << ")\n"
        << "total_cost     " << fmt(row.total_cost) << '\n'
        << "unbalanced     " << fmt(unbalanced.total) << '\n'
        << "wall_time_s    " << fmt(row.wall_time_s) << '\n';

    const std::vector<ResultRow> rows{row};
    emit_convergence(rows, dir / "convergence.csv");
    const std::vector<NamedSolution> solutions{
        {std::string(algorithm_name(row.algorithm)), DecisionVector(row.m1, row.m2, row.phi1, row.phi2)}};
    emit_polar(problem.mechanism, DecisionVector::zero(), solutions, a.samples, dir / "polar.csv");
    return kExitOk;
}

struct CalibrateArgs {
    std::string config;
    std::optional<std::size_t> samples;
    std::optional<double> fraction;
    std::optional<std::uint64_t> seed;
    std::string write;
    bool force = false;
};

int cmd_calibrate(const CalibrateArgs& a, std::ostream& out) {
    AppConfig cfg = load(a.config);
    if (a.samples) cfg.calibration.samples = *a.samples;
    if (a.fraction) cfg.calibration.fraction = *a.fraction;
    if (a.seed) cfg.calibration.seed = *a.seed;
    if (cfg.calibration.samples < 1) throw UsageError("--samples must be >= 1");
    if (!(cfg.calibration.fraction > 0.0 && cfg.calibration.fraction <= 1.0))
        throw UsageError("--fraction must be in (0, 1]");
    if (!a.write.empty()) claim_outputs({fs::path(a.write)}, a.force);

    const CalibratedLimits lim = calibrate_bounds(cfg.mechanism, cfg.objective.bounds, cfg.calibration.samples,
                                                  cfg.calibration.fraction, cfg.calibration.seed,
                                                  cfg.objective.n_samples);
    out << "c1_max " << fmt(lim.c1_max) << '\n' << "c2_max " << fmt(lim.c2_max) << '\n';
    if (lim.degenerate()) throw RunFailure("calibration is degenerate: the mechanism produces no moment");

    if (!a.write.empty()) {
        cfg.objective.c1_max = lim.c1_max;
        cfg.objective.c2_max = lim.c2_max;
        cfg.c1_max_auto = false;
        cfg.c2_max_auto = false;
        std::ofstream file(a.write, std::ios::binary | std::ios::trunc);
        file << render_config(cfg);
        if (!file) throw RunFailure("cannot write " + a.write);
    }
    return kExitOk;
}

struct BenchArgs {
    std::string config;
    std::string out;
    std::optional<std::size_t> jobs;
    std::optional<std::size_t> repeats;
    std::optional<std::uint64_t> base_seed;
    bool force = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    AppConfig cfg = load(a.config);
    if (a.repeats) cfg.bench.repeats = *a.repeats;
    if (a.base_seed) cfg.bench.base_seed = *a.base_seed;
    if (cfg.bench.repeats == 0) throw UsageError("--repeats must be >= 1");
    const std::size_t jobs = a.jobs.value_or(cfg.bench.jobs);

    const fs::path dir(a.out);
    const fs::path results = dir / "results.csv", summary = dir / "summary.csv",
                   convergence = dir / "convergence.csv", runtime = dir / "runtime.csv";
    claim_outputs({results, summary, convergence, runtime}, a.force);

    const ExperimentPlan plan = make_plan(cfg);
    const std::vector<ResultRow> rows = run_plan(plan, jobs);
    const StatsSummary stats = summarize(rows);
    emit_results(rows, results);
    emit_summary(stats, summary);
    emit_convergence(rows, convergence);
    emit_runtime_growth(rows, runtime);

    std::size_t failed = 0;
    for (const ResultRow& r : rows) {
        if (!r.ok) {
            ++failed;
            err << "run failed: " << algorithm_name(r.algorithm) << " budget " << r.budget << " seed " << r.seed
                << ": " << r.message << '\n';
        }
    }
    out << "runs " << rows.size() << " (failed " << failed << ")\n";
    for (const GroupStats& g : stats) {
        out << algorithm_name(g.algorithm) << " budget " << g.budget << ": cost avg " << fmt(g.cost.average)
            << " best " << fmt(g.cost.best) << " worst " << fmt(g.cost.worst) << "; wall_time_s avg "
            << fmt(g.wall_time.average) << '\n';
    }
    return failed == 0 ? kExitOk : kExitRunFailure;
}

struct ProfileArgs {
    std::string config;
    std::string solutions;
    std::size_t samples = 360;
    std::string out;
    bool force = false;
};

int cmd_profile(const ProfileArgs& a, std::ostream& out) {
    const AppConfig cfg = load(a.config);
    if (a.samples < 8) throw UsageError("--samples must be >= 8");
    std::ifstream in(a.solutions, std::ios::binary);
    if (!in) throw UsageError("cannot open " + a.solutions);
    std::vector<NamedSolution> solutions;
    try {
        solutions = read_solutions_csv(in);
    } catch (const std::runtime_error& e) {
        throw UsageError(a.solutions + ": " + e.what());
    }
    const fs::path polar = fs::path(a.out) / "polar.csv";
    claim_outputs({polar}, a.force);
    emit_polar(cfg.mechanism, DecisionVector::zero(), solutions, a.samples, polar);
    out << "wrote " << polar.string() << " (" << solutions.size() << " solutions, " << a.samples << " samples)\n";
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dynamic balancing of a double four-bar crank-slider mechanism", "shakebal"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    BalanceArgs balance;
    auto* sub_balance = app.add_subcommand("balance", "Run one optimization and write its convergence and polar profile");
    sub_balance->add_option("--config", balance.config, "Configuration file (defaults if omitted)");
    sub_balance->add_option("--algo", balance.algo, "Algorithm")
        ->check(CLI::IsMember({"pso", "abc", "bga", "hgapso"}))
        ->capture_default_str();
    sub_balance->add_option("--iters", balance.iters, "Iterations [default: <algo>.iterations from config, 300]");
    sub_balance->add_option("--seed", balance.seed, "Random seed [default: bench.base_seed from config, 1]");
    sub_balance->add_option("--out", balance.out, "Output directory")->required();
    sub_balance->add_option("--samples", balance.samples, "Polar profile samples")->capture_default_str();
    sub_balance->add_flag("--force", balance.force, "Overwrite existing output files");

    CalibrateArgs calibrate;
    auto* sub_calibrate = app.add_subcommand("calibrate", "Recommend moment-area limits c1_max and c2_max");
    sub_calibrate->add_option("--config", calibrate.config, "Configuration file (defaults if omitted)");
    sub_calibrate->add_option("--samples", calibrate.samples, "Random decision vectors [default: 1000]");
    sub_calibrate->add_option("--fraction", calibrate.fraction, "Fraction of the observed maxima [default: 0.5]");
    sub_calibrate->add_option("--seed", calibrate.seed, "Random seed [default: 0]");
    sub_calibrate->add_option("--write", calibrate.write, "Write a copy of the config with the limits filled in");
    sub_calibrate->add_flag("--force", calibrate.force, "Overwrite an existing --write file");

    BenchArgs bench;
    auto* sub_bench = app.add_subcommand("bench", "Run the repeated-seed benchmark campaign");
    sub_bench->add_option("--config", bench.config, "Configuration file (defaults if omitted)");
    sub_bench->add_option("--out", bench.out, "Output directory")->required();
    sub_bench->add_option("--jobs", bench.jobs, "Parallel runs, 0 = logical processors [default: bench.jobs, 0]");
    sub_bench->add_option("--repeats", bench.repeats, "Experiments per group [default: bench.repeats, 10]");
    sub_bench->add_option("--base-seed", bench.base_seed, "Seed of experiment 1 [default: bench.base_seed, 1]");
    sub_bench->add_flag("--force", bench.force, "Overwrite existing output files");

    ProfileArgs profile;
    auto* sub_profile = app.add_subcommand("profile", "Write polar profiles for named solutions");
    sub_profile->add_option("--config", profile.config, "Configuration file (defaults if omitted)");
    sub_profile->add_option("--solutions", profile.solutions, "CSV with header name,m1,m2,phi1,phi2")->required();
    sub_profile->add_option("--samples", profile.samples, "Samples per revolution")->capture_default_str();
    sub_profile->add_option("--out", profile.out, "Output directory")->required();
    sub_profile->add_flag("--force", profile.force, "Overwrite existing output files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*sub_balance) return cmd_balance(balance, out);
        if (*sub_calibrate) return cmd_calibrate(calibrate, out);
        if (*sub_bench) return cmd_bench(bench, out, err);
        if (*sub_profile) return cmd_profile(profile, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "run failed: " << e.what() << '\n';
        return kExitRunFailure;
    }
    return kExitUsage;
}

}  // namespace shakebal::cli
