#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "shakebal/config.hpp"
#include "shakebal/csv.hpp"

using namespace shakebal;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("shakebal_test_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path write(const std::string& file, const std::string& text) const {
        std::ofstream(path / file, std::ios::binary) << text;
        return path / file;
    }
};

struct CliRun {
    int code;
    std::string out, err;
};

CliRun invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "shakebal");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

double printed(const std::string& out, const std::string& key) {
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string k, v;
        ls >> k >> v;
        if (k == key) return csv::parse_double(v);
    }
    throw std::runtime_error("missing " + key);
}

// Unit-scale cancellation mechanism with quick optimizer settings.
const char* kQuickConfig = R"(# test problem
mechanism.m_c = 0
mechanism.m_p = 0
mechanism.R = 1
mechanism.L = 2
mechanism.omega = 1
mechanism.m_0 = 1
mechanism.R_0 = 1
mechanism.alpha = 40deg
mechanism.a_1 = 1
mechanism.a_2 = 1
mechanism.r_1 = 1
mechanism.r_2 = 1
calibration.samples = 200
abc.food_sources = 6
bga.population = 10
hgapso.population = 10
bench.budgets = 3, 4
bench.repeats = 2
)";

}  // namespace

TEST_CASE("empty config yields defaults") {
    const AppConfig c = parse_config_text("");
    CHECK(c.mechanism.m_c == MechanismConfig{}.m_c);
    CHECK(c.mechanism.theta_0 == MechanismConfig{}.theta_0);
    CHECK(c.objective.n_samples == 720);
    CHECK(c.c1_max_auto);
    CHECK(c.algorithms.pso.c1 == 0.25);
    CHECK(c.bench.repeats == 10);
    CHECK(c.bench.budgets == std::vector<std::size_t>{200, 300});
    CHECK(c.bench.algorithms.size() == 4);
}

TEST_CASE("config values and units") {
    const AppConfig c = parse_config_text(
        "mechanism.alpha = 180deg  # half turn\n"
        "mechanism.theta_0 = -1.5rad\n"
        "mechanism.omega = 6.2e1\n"
        "objective.c1_max = 12.5\n"
        "objective.m1_max = 3\n"
        "bga.mutation_prob_per_bit = auto\n"
        "bench.algorithms = abc, pso\n");
    CHECK(c.mechanism.alpha == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(c.mechanism.theta_0 == doctest::Approx(2 * std::numbers::pi - 1.5).epsilon(1e-15));
    CHECK(c.mechanism.omega == 62.0);
    CHECK(c.objective.c1_max == 12.5);
    CHECK_FALSE(c.c1_max_auto);
    CHECK(c.c2_max_auto);
    CHECK(c.objective.bounds.upper[0] == 3.0);
    CHECK(c.objective.bounds.upper[1] == doctest::Approx(50 * c.mechanism.m_0));
    CHECK(c.bench.algorithms == std::vector<Algorithm>{Algorithm::abc, Algorithm::pso});
}

TEST_CASE("config errors name origin, line and key") {
    try {
        parse_config_text("# ok\nmechanism.L = -1\n", "rig.cfg");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.origin() == "rig.cfg");
        CHECK(e.line() == 2);
        CHECK(e.key() == "mechanism.L");
        CHECK(std::string(e.what()).find("rig.cfg:2: mechanism.L") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("mechanism.colour = red\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("mechanism.R = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("no equals sign\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("bench.algorithms = pso, de\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("bga.population = 7\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("mechanism.R = 1\nmechanism.L = 0.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("/nonexistent/shakebal.cfg"), ConfigError);
}

TEST_CASE("rendered config parses back to the same text") {
    const AppConfig c = parse_config_text(kQuickConfig);
    const std::string text = render_config(c);
    const AppConfig back = parse_config_text(text);
    CHECK(render_config(back) == text);
    CHECK(back.mechanism.alpha == c.mechanism.alpha);
    CHECK(back.algorithms.abc.food_sources == 6);
    CHECK(render_config(parse_config_text(render_config(AppConfig{}))) == render_config(AppConfig{}));
}

TEST_CASE("resolving a problem calibrates auto limits") {
    const AppConfig c = parse_config_text(kQuickConfig);
    const Problem p = resolve_problem(c);
    CHECK(p.objective.c1_max > 0.0);
    CHECK(p.objective.c2_max > 0.0);
    const auto lim = calibrate_bounds(c.mechanism, c.objective.bounds, 200, 0.5, 0, 720);
    CHECK(p.objective.c1_max == lim.c1_max);

    AppConfig dead = parse_config_text("mechanism.m_c = 0\nmechanism.m_p = 0\nmechanism.m_0 = 0\n"
                                       "objective.m1_max = 0\nobjective.m2_max = 0\n");
    CHECK_THROWS_AS(resolve_problem(dead), std::invalid_argument);
}

TEST_CASE("cli help lists every flag with its default") {
    const auto top = invoke({"--help"});
    CHECK(top.code == 0);
    for (const char* sub : {"balance", "calibrate", "bench", "profile"}) CHECK(top.out.find(sub) != std::string::npos);

    const auto b = invoke({"balance", "--help"});
    CHECK(b.code == 0);
    for (const char* s : {"--config", "--algo", "[pso]", "--iters", "--seed", "--out", "--samples", "[360]", "--force"})
        CHECK(b.out.find(s) != std::string::npos);
    const auto c = invoke({"calibrate", "--help"});
    for (const char* s : {"--samples", "1000", "--fraction", "0.5", "--seed", "--write"})
        CHECK(c.out.find(s) != std::string::npos);
    const auto n = invoke({"bench", "--help"});
    for (const char* s : {"--out", "--jobs", "--repeats", "10", "--base-seed"}) CHECK(n.out.find(s) != std::string::npos);
    const auto p = invoke({"profile", "--help"});
    for (const char* s : {"--solutions", "--samples", "[360]", "--out"}) CHECK(p.out.find(s) != std::string::npos);
}

TEST_CASE("cli usage errors exit with 1") {
    CHECK(invoke({}).code == 1);
    CHECK(invoke({"balance"}).code == 1);
    CHECK(invoke({"balance", "--out", "x", "--algo", "de"}).code == 1);
    CHECK(invoke({"frobnicate"}).code == 1);
    TempDir dir("usage");
    const auto cfg = dir.write("bad.cfg", "mechanism.nope = 1\n");
    const auto r = invoke({"balance", "--config", cfg.string(), "--out", (dir.path / "o").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("mechanism.nope") != std::string::npos);
}

TEST_CASE("cli balance") {
    TempDir dir("balance");
    const auto cfg = dir.write("q.cfg", kQuickConfig);
    const std::string out = (dir.path / "run").string();
    const auto r = invoke({"balance", "--config", cfg.string(), "--out", out, "--seed", "4"});
    REQUIRE(r.code == 0);
    for (const char* k : {"m1", "m2", "phi1_rad", "phi2_rad", "raw_cost", "c1", "c2", "total_cost"})
        CHECK_NOTHROW(printed(r.out, k));
    CHECK(printed(r.out, "iterations") == 300);
    CHECK(printed(r.out, "total_cost") <= 0.01 * printed(r.out, "unbalanced"));
    CHECK(fs::exists(fs::path(out) / "convergence.csv"));
    CHECK(fs::exists(fs::path(out) / "polar.csv"));
    const std::string conv = read_file(fs::path(out) / "convergence.csv");

    const auto again = invoke({"balance", "--config", cfg.string(), "--out", out, "--seed", "4"});
    CHECK(again.code == 1);
    CHECK(again.err.find("--force") != std::string::npos);
    const auto forced = invoke({"balance", "--config", cfg.string(), "--out", out, "--seed", "4", "--force"});
    CHECK(forced.code == 0);
    CHECK(read_file(fs::path(out) / "convergence.csv") == conv);

    const auto abc = invoke({"balance", "--config", cfg.string(), "--out", out, "--algo", "abc", "--iters", "7",
                          "--samples", "90", "--force"});
    CHECK(abc.code == 0);
    CHECK(printed(abc.out, "iterations") == 7);
}

TEST_CASE("cli calibrate") {
    TempDir dir("calibrate");
    const auto cfg = dir.write("q.cfg", kQuickConfig);
    const auto newcfg = dir.path / "calibrated.cfg";
    const auto r = invoke({"calibrate", "--config", cfg.string(), "--samples", "150", "--fraction", "0.8", "--seed", "3",
                        "--write", newcfg.string()});
    REQUIRE(r.code == 0);
    const AppConfig written = parse_config(newcfg);
    CHECK_FALSE(written.c1_max_auto);
    CHECK(written.objective.c1_max == printed(r.out, "c1_max"));
    CHECK(written.objective.c2_max == printed(r.out, "c2_max"));
    const AppConfig base = parse_config(cfg);
    const auto lim = calibrate_bounds(base.mechanism, base.objective.bounds, 150, 0.8, 3, 720);
    CHECK(written.objective.c1_max == lim.c1_max);

    CHECK(invoke({"calibrate", "--config", cfg.string(), "--write", newcfg.string()}).code == 1);
    CHECK(invoke({"calibrate", "--config", cfg.string(), "--fraction", "2"}).code == 1);
}

TEST_CASE("cli bench") {
    TempDir dir("bench");
    const auto cfg = dir.write("q.cfg", kQuickConfig);
    const std::string out = (dir.path / "campaign").string();
    const auto r = invoke({"bench", "--config", cfg.string(), "--out", out, "--jobs", "2"});
    REQUIRE(r.code == 0);
    for (const char* f : {"results.csv", "summary.csv", "convergence.csv", "runtime.csv"})
        CHECK(fs::exists(fs::path(out) / f));
    std::ifstream in(fs::path(out) / "results.csv");
    CHECK(csv::read_rows(in).size() == 1 + 4 * 2 * 2);

    const auto more = invoke({"bench", "--config", cfg.string(), "--out", out, "--repeats", "1", "--base-seed", "9",
                           "--force"});
    REQUIRE(more.code == 0);
    std::ifstream in2(fs::path(out) / "results.csv");
    const auto rows = csv::read_rows(in2);
    CHECK(rows.size() == 1 + 4 * 2);
    CHECK(rows[1][3] == "9");

    const auto broken = dir.write("broken.cfg", std::string(kQuickConfig) + "mechanism.omega = 1e200\n"
                                                                          "objective.c1_max = 1\n"
                                                                          "objective.c2_max = 1\n");
    const auto fail = invoke({"bench", "--config", broken.string(), "--out", (dir.path / "broken").string()});
    CHECK(fail.code == 2);
    CHECK(fs::exists(dir.path / "broken" / "results.csv"));
}

TEST_CASE("cli profile") {
    TempDir dir("profile");
    const auto cfg = dir.write("q.cfg", kQuickConfig);
    const auto sols = dir.write("s.csv", "name,m1,m2,phi1,phi2\nopposed,1,0,3.839724354387525,0\n");
    const std::string out = (dir.path / "p").string();
    const auto r = invoke({"profile", "--config", cfg.string(), "--solutions", sols.string(), "--samples", "72",
                        "--out", out});
    REQUIRE(r.code == 0);
    std::ifstream in(fs::path(out) / "polar.csv");
    const auto rows = csv::read_rows(in);
    REQUIRE(rows.size() == 73);
    CHECK(rows[0].back() == "r_opposed");
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(csv::parse_double(rows[k][2]) <= 1e-12);

    const auto missing = invoke({"profile", "--solutions", (dir.path / "none.csv").string(), "--out", out, "--force"});
    CHECK(missing.code == 1);
}
