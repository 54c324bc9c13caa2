// Acceptance gate: one PASS/FAIL line per criterion. A criterion also fails
// when it exceeds its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "shakebal/bench.hpp"
#include "shakebal/csv.hpp"
#include "support/oracle.hpp"
#include "support/problems.hpp"

using namespace shakebal;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "shakebal");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (code != 0) std::cerr << err.str();
    return code;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return csv::read_rows(in);
}

// results.csv with the wall_time_s column removed.
std::string deterministic_part(const fs::path& p) {
    std::ostringstream out;
    for (auto row : read_csv(p)) {
        row.erase(row.begin() + 12);
        csv::write_row(out, row);
    }
    return out.str();
}

MechanismConfig random_config(std::mt19937_64& g) {
    std::uniform_real_distribution<double> mass(0.0, 3.0), len(0.05, 2.0), ang(0.0, kTwoPi);
    MechanismConfig c;
    c.m_c = mass(g);
    c.m_p = mass(g);
    c.L = len(g) + 1.0;
    c.R = std::uniform_real_distribution<double>(0.05, c.L)(g);
    c.omega = std::uniform_real_distribution<double>(0.5, 200.0)(g);
    c.m_0 = mass(g);
    c.R_0 = len(g);
    c.alpha = ang(g);
    c.a_1 = len(g);
    c.a_2 = len(g);
    c.theta_0 = ang(g);
    c.r_1 = len(g);
    c.r_2 = len(g);
    return c;
}

Outcome equation_fidelity() {
    std::mt19937_64 g(1);
    std::uniform_real_distribution<double> mass(0.0, 5.0), ang(-20.0, 20.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const MechanismConfig c = random_config(g);
        const DecisionVector d(mass(g), mass(g), ang(g), ang(g));
        const double t = ang(g);
        const double scale = oracle::fx_scale(c, d) * (1.0 + 2.0 * c.a_1 + c.a_2);
        worst = std::max({worst, std::abs(force_x(c, d, t) - oracle::sum_fx(c, d, t)) / scale,
                          std::abs(force_y(c, d, t) - oracle::sum_fy(c, d, t)) / scale,
                          std::abs(moment_x(c, d, t) - oracle::sum_mx(c, d, t)) / scale,
                          std::abs(moment_y(c, d, t) - oracle::sum_my(c, d, t)) / scale});
    }
    return {worst <= 1e-12, "max relative error " + num(worst)};
}

Outcome analytic_cancellation() {
    const MechanismConfig c = fixtures::cancellation_mechanism();
    const DecisionVector d = fixtures::cancelling_counterweight(c);
    double worst = 0.0;
    for (const DynamicsSample& s : sample_profile(c, d, 1024))
        worst = std::max({worst, std::abs(s.p1), std::abs(s.p2), std::abs(s.p3), std::abs(s.p4)});
    const auto a = profile_areas(c, d, 1024);
    const bool ok = worst <= 1e-9 && a.f <= 1e-9 && a.c1 <= 1e-9 && a.c2 <= 1e-9;
    return {ok, "max |P| " + num(worst) + ", f " + num(a.f) + ", C1 " + num(a.c1) + ", C2 " + num(a.c2)};
}

Outcome quadrature() {
    const std::vector<double> one(720, 1.0);
    const double circle = std::abs(polar_area(one) - std::numbers::pi);
    std::vector<double> c(1024);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::abs(std::cos(grid_angle(k, 1024)));
    const double lobes = std::abs(polar_area(c) - std::numbers::pi / 2);
    const MechanismConfig cfg;
    const double f720 = profile_areas(cfg, {}, 720).f;
    const double f1440 = profile_areas(cfg, {}, 1440).f;
    const double change = std::abs(f1440 - f720) / f720;
    return {circle <= 1e-12 && lobes <= 1e-6 && change < 1e-8,
            "circle " + num(circle) + ", |cos| " + num(lobes) + ", n-doubling " + num(change)};
}

Outcome optimizer_sanity() {
    const Bounds box = Bounds::uniform(4, -5.12, 5.12);
    std::size_t pso = 0, abc = 0, bga = 0, hgapso = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        pso += optimize_pso(fixtures::sphere, box, PsoParams{}, seed).best_f <= 1e-4;
        abc += optimize_abc(fixtures::sphere, box, AbcParams{}, seed).best_f <= 1e-4;
        bga += optimize_bga(fixtures::sphere, box, BgaParams{}, seed).best_f <= 1e-1;
        hgapso += optimize_hgapso(fixtures::sphere, box, HgapsoParams{}, seed).best_f <= 1e-2;
    }
    return {pso >= 9 && abc >= 9 && bga >= 9 && hgapso >= 9,
            "seeds within threshold: pso " + std::to_string(pso) + ", abc " + std::to_string(abc) + ", bga " +
                std::to_string(bga) + ", hgapso " + std::to_string(hgapso)};
}

Outcome balancing_effectiveness() {
    const Problem problem = fixtures::cancellation_problem();
    const BalancingObjective objective(problem.mechanism, problem.objective);
    const double unbalanced = objective.evaluate(DecisionVector::zero()).total;
    const AlgorithmSettings settings;
    bool pass = true;
    std::string detail = "runs within 1% of unbalanced:";
    auto tally = [&](Algorithm a, std::size_t budget) {
        std::size_t hits = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const ResultRow r = run_balancing(problem, settings, a, budget, seed);
            hits += r.ok && r.total_cost <= 0.01 * unbalanced;
        }
        pass = pass && hits >= 8;
        detail += " " + std::string(algorithm_name(a)) + "@" + std::to_string(budget) + " " + std::to_string(hits);
    };
    for (Algorithm a : kAllAlgorithms) tally(a, 300);
    tally(Algorithm::pso, 200);
    tally(Algorithm::abc, 200);
    return {pass, detail};
}

Outcome protocol_reproduction(const fs::path& work) {
    const fs::path out = work / "bench_default";
    if (run_cli({"bench", "--out", out.string(), "--force"}) != 0) return {false, "bench exited nonzero"};
    const auto results = read_csv(out / "results.csv");
    const auto summary = read_csv(out / "summary.csv");
    bool ordered = summary.size() == 1 + 4 * 2 * 2;
    for (std::size_t i = 1; i < summary.size(); ++i) {
        const double avg = csv::parse_double(summary[i][3]);
        const double best = csv::parse_double(summary[i][4]);
        const double worst = csv::parse_double(summary[i][5]);
        ordered = ordered && best <= avg && avg <= worst;
    }
    const bool rows = results.size() == 1 + 80;
    return {rows && ordered, std::to_string(results.size() - 1) + " result rows, " +
                                 std::to_string(summary.size() - 1) + " summary rows, best <= avg <= worst " +
                                 (ordered ? "holds" : "violated")};
}

Outcome determinism(const fs::path& work) {
    const fs::path reference = work / "bench_default" / "results.csv";
    if (!fs::exists(reference)) return {false, "reference bench missing"};
    const std::string expected = deterministic_part(reference);
    std::string detail = "identical at --jobs";
    bool pass = true;
    for (const char* jobs : {"1", "3"}) {
        const fs::path out = work / (std::string("bench_jobs") + jobs);
        if (run_cli({"bench", "--out", out.string(), "--jobs", jobs, "--force"}) != 0) return {false, "bench failed"};
        const bool same = deterministic_part(out / "results.csv") == expected;
        pass = pass && same;
        detail += std::string(" ") + jobs + (same ? " yes" : " NO");
    }
    return {pass, detail + " (reference at all processors)"};
}

Outcome invariant_suite() {
    std::vector<std::string> broken;
    const Problem problem = fixtures::cancellation_problem();
    const BalancingObjective objective(problem.mechanism, problem.objective);
    const ObjectiveFn fn = [&](std::span<const double> x) { return objective(x); };
    const Bounds& box = problem.objective.bounds;

    PsoParams pso;
    pso.iterations = 100;
    AbcParams abc;
    abc.iterations = 100;
    BgaParams bga;
    bga.iterations = 100;
    HgapsoParams hgapso;
    hgapso.iterations = 100;

    double prob_err = 0.0;
    RunObserver obs;
    obs.on_selection_probabilities = [&](std::span<const double> p) {
        prob_err = std::max(prob_err, std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0));
    };
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const RunResult runs[] = {optimize_pso(fn, box, pso, seed), optimize_abc(fn, box, abc, seed, &obs),
                                  optimize_bga(fn, box, bga, seed), optimize_hgapso(fn, box, hgapso, seed)};
        for (const RunResult& r : runs) {
            for (std::size_t i = 1; i < r.trace.size(); ++i)
                if (r.trace[i] > r.trace[i - 1]) broken.push_back("monotone trace");
            if (!box.contains(r.best_x)) broken.push_back("box feasibility");
        }
    }
    if (prob_err > 1e-12) broken.push_back("abc probabilities");
    if (inertia_weight(0.9, 0.4, 300, 0) != 0.9 || inertia_weight(0.9, 0.4, 300, 300) != 0.4)
        broken.push_back("inertia endpoints");

    const std::vector<double> x{0.8, 0.3, 2.1, 5.0};
    const std::vector<double> xs{0.8, 0.3, 2.1 + kTwoPi, 5.0 - kTwoPi};
    if (std::abs(objective(xs) - objective(x)) > 1e-12 * objective(x)) broken.push_back("angle periodicity");

    const MechanismConfig base;
    MechanismConfig fast = base;
    fast.omega = 2.5 * base.omega;
    const DecisionVector d(0.3, 0.15, 2.0, 4.4);
    for (double t : {0.0, 1.0, 3.0, 5.0}) {
        const DynamicsSample a = sample_at(base, d, t), b = sample_at(fast, d, t);
        const double s2 = 6.25;
        if (std::abs(b.p1 - s2 * a.p1) > 1e-12 * std::abs(s2 * a.p1) ||
            std::abs(b.p2 - s2 * a.p2) > 1e-12 * std::abs(s2 * a.p2) ||
            std::abs(b.p3 - s2 * a.p3) > 1e-12 * std::abs(s2 * a.p3) ||
            std::abs(b.p4 - s2 * a.p4) > 1e-12 * std::abs(s2 * a.p4))
            broken.push_back("omega^2 force scaling");
    }
    const auto fa = profile_areas(base, d, 720), fb = profile_areas(fast, d, 720);
    const double s4 = std::pow(2.5, 4);
    if (std::abs(fb.f - s4 * fa.f) > 1e-12 * s4 * fa.f || std::abs(fb.c1 - s4 * fa.c1) > 1e-12 * s4 * fa.c1 ||
        std::abs(fb.c2 - s4 * fa.c2) > 1e-12 * s4 * fa.c2)
        broken.push_back("omega^4 cost scaling");

    std::sort(broken.begin(), broken.end());
    broken.erase(std::unique(broken.begin(), broken.end()), broken.end());
    std::string detail = broken.empty() ? "all invariants hold" : "violated:";
    for (const auto& b : broken) detail += " " + b;
    return {broken.empty(), detail};
}

}  // namespace

int main() {
    const fs::path work = fs::temp_directory_path() / "shakebal_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    const std::vector<Criterion> criteria{
        {1, "equation fidelity", 1.0, equation_fidelity},
        {2, "analytic cancellation", 1.0, analytic_cancellation},
        {3, "quadrature", 1.0, quadrature},
        {4, "optimizer sanity on the sphere", 30.0, optimizer_sanity},
        {5, "balancing effectiveness", 60.0, balancing_effectiveness},
        {6, "protocol reproduction", 300.0, [&] { return protocol_reproduction(work); }},
        {7, "determinism across job counts", 600.0, [&] { return determinism(work); }},
        {8, "invariant suite", 30.0, invariant_suite},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " ("
                  << num(secs) << " s of " << c.budget_s << " s" << (in_time ? "" : ", over budget") << ")"
                  << std::endl;
    }
    fs::remove_all(work);
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
