#include "shakebal/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "shakebal/csv.hpp"

namespace shakebal {

std::string_view algorithm_name(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::pso: return "pso";
        case Algorithm::abc: return "abc";
        case Algorithm::bga: return "bga";
        case Algorithm::hgapso: return "hgapso";
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
    for (Algorithm a : kAllAlgorithms)
        if (algorithm_name(a) == name) return a;
    return std::nullopt;
}

RunResult run_algorithm(Algorithm a, const ObjectiveFn& objective, const Bounds& bounds,
                        const AlgorithmSettings& settings, std::size_t iterations, std::uint64_t seed) {
    switch (a) {
        case Algorithm::pso: {
            PsoParams p = settings.pso;
            p.iterations = iterations;
            return optimize_pso(objective, bounds, p, seed);
        }
        case Algorithm::abc: {
            AbcParams p = settings.abc;
            p.iterations = iterations;
            return optimize_abc(objective, bounds, p, seed);
        }
        case Algorithm::bga: {
            BgaParams p = settings.bga;
            p.iterations = iterations;
            return optimize_bga(objective, bounds, p, seed);
        }
        case Algorithm::hgapso: {
            HgapsoParams p = settings.hgapso;
            p.iterations = iterations;
            return optimize_hgapso(objective, bounds, p, seed);
        }
    }
    throw std::invalid_argument("run_algorithm: unknown algorithm");
}

void ExperimentPlan::validate() const {
    if (algorithms.empty()) throw std::invalid_argument("ExperimentPlan: no algorithms");
    if (iteration_budgets.empty()) throw std::invalid_argument("ExperimentPlan: no iteration budgets");
    for (std::size_t b : iteration_budgets)
        if (b == 0) throw std::invalid_argument("ExperimentPlan: budgets must be >= 1");
    if (repeats == 0) throw std::invalid_argument("ExperimentPlan: repeats must be >= 1");
    problem.mechanism.validate();
    problem.objective.validate();
}

namespace {

ResultRow run_one(const BalancingObjective& objective, const AlgorithmSettings& settings, Algorithm a,
                  std::size_t iterations, std::uint64_t seed) {
    ResultRow row;
    row.algorithm = a;
    row.budget = iterations;
    row.seed = seed;
    try {
        const ObjectiveFn fn = [&objective](std::span<const double> x) { return objective(x); };
        RunResult r = run_algorithm(a, fn, objective.spec().bounds, settings, iterations, seed);
        const DecisionVector dv = DecisionVector::from_point(r.best_x);
        const CostBreakdown cost = objective.evaluate(dv);
        row.m1 = dv.m_1();
        row.m2 = dv.m_2();
        row.phi1 = dv.phi_1();
        row.phi2 = dv.phi_2();
        row.raw_cost = cost.raw_cost;
        row.c1 = cost.c1;
        row.c2 = cost.c2;
        row.total_cost = cost.total;
        row.wall_time_s = r.wall_time_s;
        row.trace = std::move(r.trace);
        row.iteration_seconds = std::move(r.iteration_seconds);
    } catch (const std::exception& e) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.m1 = row.m2 = row.phi1 = row.phi2 = nan;
        row.raw_cost = row.c1 = row.c2 = row.total_cost = row.wall_time_s = nan;
        row.ok = false;
        row.message = e.what();
    }
    return row;
}

}  // namespace

ResultRow run_balancing(const Problem& problem, const AlgorithmSettings& settings, Algorithm a,
                        std::size_t iterations, std::uint64_t seed) {
    const BalancingObjective objective(problem.mechanism, problem.objective);
    return run_one(objective, settings, a, iterations, seed);
}

std::vector<ResultRow> run_plan(const ExperimentPlan& plan, std::size_t jobs) {
    plan.validate();
    const BalancingObjective objective(plan.problem.mechanism, plan.problem.objective);

    struct Task {
        Algorithm algorithm;
        std::size_t budget;
        std::size_t repeat;
    };
    std::vector<Task> tasks;
    for (Algorithm a : plan.algorithms)
        for (std::size_t b : plan.iteration_budgets)
            for (std::size_t r = 0; r < plan.repeats; ++r) tasks.push_back({a, b, r});

    std::vector<ResultRow> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const Task& t = tasks[i];
            rows[i] = run_one(objective, plan.settings, t.algorithm, t.budget, plan.base_seed + t.repeat);
            rows[i].experiment = t.repeat + 1;
        }
    };

    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, tasks.size());
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    return rows;
}

StatsSummary summarize(std::span<const ResultRow> rows) {
    StatsSummary out;
    std::vector<std::vector<const ResultRow*>> members;
    for (const ResultRow& row : rows) {
        auto it = std::find_if(out.begin(), out.end(), [&](const GroupStats& g) {
            return g.algorithm == row.algorithm && g.budget == row.budget;
        });
        if (it == out.end()) {
            out.push_back({row.algorithm, row.budget, 0, {}, {}});
            members.emplace_back();
            it = out.end() - 1;
        }
        if (row.ok) members[static_cast<std::size_t>(it - out.begin())].push_back(&row);
    }
    auto stat = [](const std::vector<const ResultRow*>& group, double ResultRow::*field) {
        Stat s;
        if (group.empty()) {
            s.average = s.best = s.worst = std::numeric_limits<double>::quiet_NaN();
            return s;
        }
        double sum = 0.0;
        s.best = s.worst = group.front()->*field;
        for (const ResultRow* r : group) {
            const double v = r->*field;
            sum += v;
            s.best = std::min(s.best, v);
            s.worst = std::max(s.worst, v);
        }
        s.average = sum / static_cast<double>(group.size());
        return s;
    };
    for (std::size_t g = 0; g < out.size(); ++g) {
        out[g].runs = members[g].size();
        out[g].cost = stat(members[g], &ResultRow::total_cost);
        out[g].wall_time = stat(members[g], &ResultRow::wall_time_s);
    }
    return out;
}

namespace {

using csv::format_double;

const std::vector<std::string> kResultsHeader = {
    "algorithm", "budget", "experiment", "seed",   "m1",         "m2",          "phi1",
    "phi2",      "raw_cost", "c1",       "c2",     "total_cost", "wall_time_s", "status"};

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

void write_results_csv(std::span<const ResultRow> rows, std::ostream& out) {
    csv::write_row(out, kResultsHeader);
    for (const ResultRow& r : rows) {
        csv::write_row(out, {std::string(algorithm_name(r.algorithm)), std::to_string(r.budget),
                             std::to_string(r.experiment), std::to_string(r.seed), format_double(r.m1),
                             format_double(r.m2), format_double(r.phi1), format_double(r.phi2),
                             format_double(r.raw_cost), format_double(r.c1), format_double(r.c2),
                             format_double(r.total_cost), format_double(r.wall_time_s), r.ok ? "ok" : "failed"});
    }
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
    const auto rows = csv::read_rows(in);
    if (rows.empty() || rows.front() != kResultsHeader)
        throw std::runtime_error("results csv: unexpected header");
    std::vector<ResultRow> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i];
        if (f.size() != kResultsHeader.size())
            throw std::runtime_error("results csv: wrong field count on line " + std::to_string(i + 1));
        ResultRow r;
        const auto algo = parse_algorithm(f[0]);
        if (!algo) throw std::runtime_error("results csv: unknown algorithm '" + f[0] + "'");
        r.algorithm = *algo;
        r.budget = csv::parse_unsigned(f[1]);
        r.experiment = csv::parse_unsigned(f[2]);
        r.seed = csv::parse_unsigned(f[3]);
        r.m1 = csv::parse_double(f[4]);
        r.m2 = csv::parse_double(f[5]);
        r.phi1 = csv::parse_double(f[6]);
        r.phi2 = csv::parse_double(f[7]);
        r.raw_cost = csv::parse_double(f[8]);
        r.c1 = csv::parse_double(f[9]);
        r.c2 = csv::parse_double(f[10]);
        r.total_cost = csv::parse_double(f[11]);
        r.wall_time_s = csv::parse_double(f[12]);
        if (f[13] != "ok" && f[13] != "failed")
            throw std::runtime_error("results csv: bad status '" + f[13] + "'");
        r.ok = f[13] == "ok";
        out.push_back(std::move(r));
    }
    return out;
}

void write_summary_csv(const StatsSummary& summary, std::ostream& out) {
    csv::write_row(out, {"algorithm", "budget", "metric", "average", "best", "worst"});
    for (const GroupStats& g : summary) {
        const std::string algo(algorithm_name(g.algorithm));
        const std::string budget = std::to_string(g.budget);
        csv::write_row(out, {algo, budget, "cost", format_double(g.cost.average), format_double(g.cost.best),
                             format_double(g.cost.worst)});
        csv::write_row(out, {algo, budget, "wall_time_s", format_double(g.wall_time.average),
                             format_double(g.wall_time.best), format_double(g.wall_time.worst)});
    }
}

void write_convergence_csv(std::span<const ResultRow> rows, std::ostream& out) {
    csv::write_row(out, {"algorithm", "seed", "iteration", "best_cost"});
    for (const ResultRow& r : rows) {
        const std::string algo(algorithm_name(r.algorithm));
        const std::string seed = std::to_string(r.seed);
        for (std::size_t i = 0; i < r.trace.size(); ++i)
            csv::write_row(out, {algo, seed, std::to_string(i), format_double(r.trace[i])});
    }
}

void write_runtime_csv(std::span<const ResultRow> rows, std::ostream& out) {
    for (const ResultRow& r : rows) {
        if (r.ok && r.iteration_seconds.size() != r.budget)
            throw std::runtime_error("runtime csv: run " + std::string(algorithm_name(r.algorithm)) + "/" +
                                     std::to_string(r.seed) + " has no per-iteration timing");
    }
    csv::write_row(out, {"algorithm", "seed", "iteration", "cumulative_seconds"});
    for (const ResultRow& r : rows) {
        const std::string algo(algorithm_name(r.algorithm));
        const std::string seed = std::to_string(r.seed);
        for (std::size_t i = 0; i < r.iteration_seconds.size(); ++i)
            csv::write_row(out, {algo, seed, std::to_string(i + 1), format_double(r.iteration_seconds[i])});
    }
}

void write_polar_csv(const MechanismConfig& cfg, const DecisionVector& unbalanced,
                     std::span<const NamedSolution> solutions, std::size_t n_samples, std::ostream& out) {
    const MechanismConfig c = cfg.normalized();
    c.validate();
    std::vector<std::string> header = {"theta_rad", "r_unbalanced"};
    std::vector<std::vector<DynamicsSample>> columns;
    columns.push_back(sample_profile(c, unbalanced, n_samples));
    for (const auto& [name, dv] : solutions) {
        header.push_back("r_" + name);
        columns.push_back(sample_profile(c, dv, n_samples));
    }
    csv::write_row(out, header);
    for (std::size_t k = 0; k < n_samples; ++k) {
        std::vector<std::string> fields = {format_double(columns.front()[k].theta)};
        for (const auto& col : columns) fields.push_back(format_double(std::fabs(col[k].p1) + std::fabs(col[k].p2)));
        csv::write_row(out, fields);
    }
}

void emit_results(std::span<const ResultRow> rows, const std::filesystem::path& path) {
    auto out = open_output(path);
    write_results_csv(rows, out);
    finish(out, path);
}

void emit_summary(const StatsSummary& summary, const std::filesystem::path& path) {
    auto out = open_output(path);
    write_summary_csv(summary, out);
    finish(out, path);
}

void emit_convergence(std::span<const ResultRow> rows, const std::filesystem::path& path) {
    auto out = open_output(path);
    write_convergence_csv(rows, out);
    finish(out, path);
}

void emit_runtime_growth(std::span<const ResultRow> rows, const std::filesystem::path& path) {
    // Build in memory first so a timing error never leaves a partial file.
    std::ostringstream buffer;
    write_runtime_csv(rows, buffer);
    auto out = open_output(path);
    out << buffer.str();
    finish(out, path);
}

void emit_polar(const MechanismConfig& cfg, const DecisionVector& unbalanced,
                std::span<const NamedSolution> solutions, std::size_t n_samples, const std::filesystem::path& path) {
    std::ostringstream buffer;
    write_polar_csv(cfg, unbalanced, solutions, n_samples, buffer);
    auto out = open_output(path);
    out << buffer.str();
    finish(out, path);
}

std::vector<NamedSolution> read_solutions_csv(std::istream& in) {
    const auto rows = csv::read_rows(in);
    const std::vector<std::string> header = {"name", "m1", "m2", "phi1", "phi2"};
    if (rows.empty() || rows.front() != header)
        throw std::runtime_error("solutions csv: header must be name,m1,m2,phi1,phi2");
    std::vector<NamedSolution> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i];
        if (f.size() != header.size() || f[0].empty())
            throw std::runtime_error("solutions csv: malformed line " + std::to_string(i + 1));
        try {
            out.emplace_back(f[0], DecisionVector(csv::parse_double(f[1]), csv::parse_double(f[2]),
                                                  csv::parse_double(f[3]), csv::parse_double(f[4])));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("solutions csv: line " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace shakebal
