#include "shakebal/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "shakebal/csv.hpp"

namespace shakebal {

ConfigError::ConfigError(std::string origin, std::size_t line, std::string key, const std::string& what)
    : std::runtime_error(origin + (line ? ":" + std::to_string(line) : std::string()) +
                         (key.empty() ? std::string() : ": " + key) + ": " + what),
      origin_(std::move(origin)),
      line_(line),
      key_(std::move(key)) {}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double number(std::string_view v) {
    const double x = csv::parse_double(v);
    if (!std::isfinite(x)) throw std::invalid_argument("value must be finite");
    return x;
}

double angle(std::string_view v) {
    if (v.ends_with("deg")) return number(trim(v.substr(0, v.size() - 3))) * std::numbers::pi / 180.0;
    if (v.ends_with("rad")) return number(trim(v.substr(0, v.size() - 3)));
    return number(v);
}

std::size_t count(std::string_view v) { return static_cast<std::size_t>(csv::parse_unsigned(v)); }

double positive(std::string_view v) {
    const double x = number(v);
    if (!(x > 0.0)) throw std::invalid_argument("must be > 0");
    return x;
}

double non_negative(std::string_view v) {
    const double x = number(v);
    if (!(x >= 0.0)) throw std::invalid_argument("must be >= 0");
    return x;
}

double unit_interval(std::string_view v) {
    const double x = number(v);
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("must be in [0, 1]");
    return x;
}

std::vector<std::string> split_list(std::string_view v) {
    std::vector<std::string> out;
    for (const std::string& item : csv::split_line(v)) out.emplace_back(trim(item));
    return out;
}

using Handler = std::function<void(AppConfig&, std::string_view)>;

// Bound overrides are applied after the mechanism section is complete, since
// the default mass box scales with m_0.
struct BoundOverrides {
    std::array<std::optional<double>, 4> lower;
    std::array<std::optional<double>, 4> upper;
};

std::map<std::string, Handler> make_handlers(BoundOverrides& bo) {
    std::map<std::string, Handler> h;
    auto& m = h;
    // mechanism
    m["mechanism.m_c"] = [](AppConfig& c, std::string_view v) { c.mechanism.m_c = non_negative(v); };
    m["mechanism.m_p"] = [](AppConfig& c, std::string_view v) { c.mechanism.m_p = non_negative(v); };
    m["mechanism.R"] = [](AppConfig& c, std::string_view v) { c.mechanism.R = positive(v); };
    m["mechanism.L"] = [](AppConfig& c, std::string_view v) { c.mechanism.L = positive(v); };
    m["mechanism.omega"] = [](AppConfig& c, std::string_view v) { c.mechanism.omega = positive(v); };
    m["mechanism.m_0"] = [](AppConfig& c, std::string_view v) { c.mechanism.m_0 = non_negative(v); };
    m["mechanism.R_0"] = [](AppConfig& c, std::string_view v) { c.mechanism.R_0 = positive(v); };
    m["mechanism.alpha"] = [](AppConfig& c, std::string_view v) { c.mechanism.alpha = wrap_angle(angle(v)); };
    m["mechanism.a_1"] = [](AppConfig& c, std::string_view v) { c.mechanism.a_1 = positive(v); };
    m["mechanism.a_2"] = [](AppConfig& c, std::string_view v) { c.mechanism.a_2 = positive(v); };
    m["mechanism.theta_0"] = [](AppConfig& c, std::string_view v) { c.mechanism.theta_0 = wrap_angle(angle(v)); };
    m["mechanism.r_1"] = [](AppConfig& c, std::string_view v) { c.mechanism.r_1 = positive(v); };
    m["mechanism.r_2"] = [](AppConfig& c, std::string_view v) { c.mechanism.r_2 = positive(v); };

    // objective
    m["objective.n_samples"] = [](AppConfig& c, std::string_view v) {
        c.objective.n_samples = count(v);
        if (c.objective.n_samples < 8) throw std::invalid_argument("must be >= 8");
    };
    auto limit = [](double ObjectiveSpec::*field, bool AppConfig::*is_auto) {
        return [=](AppConfig& c, std::string_view v) {
            if (v == "auto") {
                c.*is_auto = true;
                c.objective.*field = 0.0;
                return;
            }
            c.objective.*field = positive(v);
            c.*is_auto = false;
        };
    };
    m["objective.c1_max"] = limit(&ObjectiveSpec::c1_max, &AppConfig::c1_max_auto);
    m["objective.c2_max"] = limit(&ObjectiveSpec::c2_max, &AppConfig::c2_max_auto);
    m["objective.penalty_weight"] = [](AppConfig& c, std::string_view v) { c.objective.penalty_weight = non_negative(v); };
    m["objective.quadrature"] = [](AppConfig& c, std::string_view v) {
        if (v == "exact") c.objective.quadrature = Quadrature::exact_kinks;
        else if (v == "rectangle") c.objective.quadrature = Quadrature::rectangle;
        else throw std::invalid_argument("must be 'exact' or 'rectangle'");
    };
    const char* names[4] = {"m1", "m2", "phi1", "phi2"};
    for (std::size_t j = 0; j < 4; ++j) {
        const bool is_angle = j >= 2;
        m[std::string("objective.") + names[j] + "_min"] = [&bo, j, is_angle](AppConfig&, std::string_view v) {
            bo.lower[j] = is_angle ? angle(v) : non_negative(v);
        };
        m[std::string("objective.") + names[j] + "_max"] = [&bo, j, is_angle](AppConfig&, std::string_view v) {
            bo.upper[j] = is_angle ? angle(v) : non_negative(v);
        };
    }

    // calibration
    m["calibration.samples"] = [](AppConfig& c, std::string_view v) {
        c.calibration.samples = count(v);
        if (c.calibration.samples < 1) throw std::invalid_argument("must be >= 1");
    };
    m["calibration.fraction"] = [](AppConfig& c, std::string_view v) {
        const double f = number(v);
        if (!(f > 0.0 && f <= 1.0)) throw std::invalid_argument("must be in (0, 1]");
        c.calibration.fraction = f;
    };
    m["calibration.seed"] = [](AppConfig& c, std::string_view v) { c.calibration.seed = csv::parse_unsigned(v); };

    // pso
    m["pso.population"] = [](AppConfig& c, std::string_view v) { c.algorithms.pso.population = count(v); };
    m["pso.iterations"] = [](AppConfig& c, std::string_view v) { c.algorithms.pso.iterations = count(v); };
    m["pso.c1"] = [](AppConfig& c, std::string_view v) { c.algorithms.pso.c1 = non_negative(v); };
    m["pso.c2"] = [](AppConfig& c, std::string_view v) { c.algorithms.pso.c2 = non_negative(v); };
    m["pso.w_max"] = [](AppConfig& c, std::string_view v) { c.algorithms.pso.w_max = non_negative(v); };
    m["pso.w_min"] = [](AppConfig& c, std::string_view v) { c.algorithms.pso.w_min = non_negative(v); };
    m["pso.v_max_fraction"] = [](AppConfig& c, std::string_view v) { c.algorithms.pso.v_max_fraction = positive(v); };

    // abc
    m["abc.food_sources"] = [](AppConfig& c, std::string_view v) { c.algorithms.abc.food_sources = count(v); };
    m["abc.iterations"] = [](AppConfig& c, std::string_view v) { c.algorithms.abc.iterations = count(v); };
    m["abc.limit"] = [](AppConfig& c, std::string_view v) { c.algorithms.abc.limit = count(v); };

    // bga
    m["bga.population"] = [](AppConfig& c, std::string_view v) { c.algorithms.bga.population = count(v); };
    m["bga.iterations"] = [](AppConfig& c, std::string_view v) { c.algorithms.bga.iterations = count(v); };
    m["bga.bits_per_variable"] = [](AppConfig& c, std::string_view v) { c.algorithms.bga.bits_per_variable = count(v); };
    m["bga.crossover_points"] = [](AppConfig& c, std::string_view v) { c.algorithms.bga.crossover_points = count(v); };
    m["bga.crossover_prob"] = [](AppConfig& c, std::string_view v) { c.algorithms.bga.crossover_prob = unit_interval(v); };
    m["bga.mutation_prob_per_bit"] = [](AppConfig& c, std::string_view v) {
        c.algorithms.bga.mutation_prob_per_bit = v == "auto" ? -1.0 : unit_interval(v);
    };
    m["bga.elitism"] = [](AppConfig& c, std::string_view v) { c.algorithms.bga.elitism = count(v); };

    // hgapso
    m["hgapso.population"] = [](AppConfig& c, std::string_view v) { c.algorithms.hgapso.population = count(v); };
    m["hgapso.iterations"] = [](AppConfig& c, std::string_view v) { c.algorithms.hgapso.iterations = count(v); };
    m["hgapso.breeding_ratio"] = [](AppConfig& c, std::string_view v) {
        const double phi = number(v);
        if (!(phi > 0.0 && phi <= 1.0)) throw std::invalid_argument("must be in (0, 1]");
        c.algorithms.hgapso.breeding_ratio = phi;
    };

    // bench
    m["bench.algorithms"] = [](AppConfig& c, std::string_view v) {
        std::vector<Algorithm> algos;
        for (const std::string& name : split_list(v)) {
            const auto a = parse_algorithm(name);
            if (!a) throw std::invalid_argument("unknown algorithm '" + name + "'");
            algos.push_back(*a);
        }
        c.bench.algorithms = std::move(algos);
    };
    m["bench.budgets"] = [](AppConfig& c, std::string_view v) {
        std::vector<std::size_t> budgets;
        for (const std::string& item : split_list(v)) {
            budgets.push_back(count(item));
            if (budgets.back() == 0) throw std::invalid_argument("budgets must be >= 1");
        }
        c.bench.budgets = std::move(budgets);
    };
    m["bench.repeats"] = [](AppConfig& c, std::string_view v) {
        c.bench.repeats = count(v);
        if (c.bench.repeats == 0) throw std::invalid_argument("must be >= 1");
    };
    m["bench.base_seed"] = [](AppConfig& c, std::string_view v) { c.bench.base_seed = csv::parse_unsigned(v); };
    m["bench.jobs"] = [](AppConfig& c, std::string_view v) { c.bench.jobs = count(v); };
    return h;
}

}  // namespace

AppConfig parse_config_text(std::string_view text, std::string_view origin_view) {
    const std::string origin(origin_view);
    AppConfig cfg;
    BoundOverrides overrides;
    const auto handlers = make_handlers(overrides);
    std::map<std::string, std::size_t> seen;  // key -> line

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(origin, line_no, "", "expected 'section.key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto it = handlers.find(key);
        if (it == handlers.end()) throw ConfigError(origin, line_no, key, "unknown key");
        if (value.empty()) throw ConfigError(origin, line_no, key, "missing value");
        try {
            it->second(cfg, value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(origin, line_no, key, e.what());
        }
        seen[key] = line_no;
    }

    auto check = [&](const char* section, const std::string& fallback_key, auto&& fn) {
        try {
            fn();
        } catch (const std::invalid_argument& e) {
            // Name the last key of the section that appeared in the file, if any.
            std::string key = fallback_key;
            std::size_t line = 0;
            for (const auto& [k, l] : seen)
                if (k.starts_with(std::string(section) + ".") && l > line) {
                    line = l;
                    key = k;
                }
            throw ConfigError(origin, line, key, e.what());
        }
    };

    check("mechanism", "mechanism", [&] { cfg.mechanism.validate(); });

    cfg.objective.bounds = ObjectiveSpec::default_bounds(cfg.mechanism);
    for (std::size_t j = 0; j < 4; ++j) {
        if (overrides.lower[j]) cfg.objective.bounds.lower[j] = *overrides.lower[j];
        if (overrides.upper[j]) cfg.objective.bounds.upper[j] = *overrides.upper[j];
    }
    check("objective", "objective", [&] {
        ObjectiveSpec probe = cfg.objective;
        // limits may legitimately still be "auto" here
        if (cfg.c1_max_auto) probe.c1_max = 1.0;
        if (cfg.c2_max_auto) probe.c2_max = 1.0;
        probe.validate();
    });

    auto& algos = cfg.algorithms;
    check("pso", "pso", [&] { algos.pso.validate(); });
    check("abc", "abc", [&] { algos.abc.validate(); });
    check("bga", "bga", [&] { algos.bga.validate(); });
    algos.hgapso.pso = algos.pso;
    algos.hgapso.bga = algos.bga;
    check("hgapso", "hgapso", [&] { algos.hgapso.validate(); });
    check("bench", "bench", [&] {
        if (cfg.bench.algorithms.empty()) throw std::invalid_argument("no algorithms");
        if (cfg.bench.budgets.empty()) throw std::invalid_argument("no budgets");
    });
    return cfg;
}

AppConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string(), 0, "", "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path.string());
}

std::string render_config(const AppConfig& c) {
    using csv::format_double;
    std::ostringstream out;
    auto num = [&](const char* key, double v) { out << key << " = " << format_double(v) << '\n'; };
    auto rad = [&](const char* key, double v) { out << key << " = " << format_double(v) << "rad\n"; };
    auto cnt = [&](const char* key, unsigned long long v) { out << key << " = " << v << '\n'; };

    const MechanismConfig& m = c.mechanism;
    out << "# mechanism\n";
    num("mechanism.m_c", m.m_c);
    num("mechanism.m_p", m.m_p);
    num("mechanism.R", m.R);
    num("mechanism.L", m.L);
    num("mechanism.omega", m.omega);
    num("mechanism.m_0", m.m_0);
    num("mechanism.R_0", m.R_0);
    rad("mechanism.alpha", m.alpha);
    num("mechanism.a_1", m.a_1);
    num("mechanism.a_2", m.a_2);
    rad("mechanism.theta_0", m.theta_0);
    num("mechanism.r_1", m.r_1);
    num("mechanism.r_2", m.r_2);

    const ObjectiveSpec& o = c.objective;
    out << "\n# objective\n";
    cnt("objective.n_samples", o.n_samples);
    if (c.c1_max_auto) out << "objective.c1_max = auto\n";
    else num("objective.c1_max", o.c1_max);
    if (c.c2_max_auto) out << "objective.c2_max = auto\n";
    else num("objective.c2_max", o.c2_max);
    num("objective.penalty_weight", o.penalty_weight);
    out << "objective.quadrature = " << (o.quadrature == Quadrature::rectangle ? "rectangle" : "exact") << '\n';
    num("objective.m1_min", o.bounds.lower[0]);
    num("objective.m1_max", o.bounds.upper[0]);
    num("objective.m2_min", o.bounds.lower[1]);
    num("objective.m2_max", o.bounds.upper[1]);
    rad("objective.phi1_min", o.bounds.lower[2]);
    rad("objective.phi1_max", o.bounds.upper[2]);
    rad("objective.phi2_min", o.bounds.lower[3]);
    rad("objective.phi2_max", o.bounds.upper[3]);

    out << "\n# calibration\n";
    cnt("calibration.samples", c.calibration.samples);
    num("calibration.fraction", c.calibration.fraction);
    cnt("calibration.seed", c.calibration.seed);

    const AlgorithmSettings& a = c.algorithms;
    out << "\n# pso\n";
    cnt("pso.population", a.pso.population);
    cnt("pso.iterations", a.pso.iterations);
    num("pso.c1", a.pso.c1);
    num("pso.c2", a.pso.c2);
    num("pso.w_max", a.pso.w_max);
    num("pso.w_min", a.pso.w_min);
    num("pso.v_max_fraction", a.pso.v_max_fraction);
    out << "\n# abc\n";
    cnt("abc.food_sources", a.abc.food_sources);
    cnt("abc.iterations", a.abc.iterations);
    cnt("abc.limit", a.abc.limit);
    out << "\n# bga\n";
    cnt("bga.population", a.bga.population);
    cnt("bga.iterations", a.bga.iterations);
    cnt("bga.bits_per_variable", a.bga.bits_per_variable);
    cnt("bga.crossover_points", a.bga.crossover_points);
    num("bga.crossover_prob", a.bga.crossover_prob);
    if (a.bga.mutation_prob_per_bit < 0.0) out << "bga.mutation_prob_per_bit = auto\n";
    else num("bga.mutation_prob_per_bit", a.bga.mutation_prob_per_bit);
    cnt("bga.elitism", a.bga.elitism);
    out << "\n# hgapso\n";
    cnt("hgapso.population", a.hgapso.population);
    cnt("hgapso.iterations", a.hgapso.iterations);
    num("hgapso.breeding_ratio", a.hgapso.breeding_ratio);

    out << "\n# bench\n";
    out << "bench.algorithms = ";
    for (std::size_t i = 0; i < c.bench.algorithms.size(); ++i)
        out << (i ? ", " : "") << algorithm_name(c.bench.algorithms[i]);
    out << "\nbench.budgets = ";
    for (std::size_t i = 0; i < c.bench.budgets.size(); ++i) out << (i ? ", " : "") << c.bench.budgets[i];
    out << '\n';
    cnt("bench.repeats", c.bench.repeats);
    cnt("bench.base_seed", c.bench.base_seed);
    cnt("bench.jobs", c.bench.jobs);
    return out.str();
}

Problem resolve_problem(const AppConfig& config) {
    Problem p{config.mechanism, config.objective};
    if (config.c1_max_auto || config.c2_max_auto) {
        const CalibratedLimits lim =
            calibrate_bounds(config.mechanism, config.objective.bounds, config.calibration.samples,
                             config.calibration.fraction, config.calibration.seed, config.objective.n_samples);
        if (config.c1_max_auto) p.objective.c1_max = lim.c1_max;
        if (config.c2_max_auto) p.objective.c2_max = lim.c2_max;
        if ((config.c1_max_auto && !(lim.c1_max > 0.0)) || (config.c2_max_auto && !(lim.c2_max > 0.0)))
            throw std::invalid_argument(
                "constraint calibration is degenerate (the mechanism produces no moment); set objective.c1_max "
                "and objective.c2_max explicitly");
    }
    p.objective.validate();
    return p;
}

ExperimentPlan make_plan(const AppConfig& config) {
    ExperimentPlan plan;
    plan.algorithms = config.bench.algorithms;
    plan.iteration_budgets = config.bench.budgets;
    plan.repeats = config.bench.repeats;
    plan.base_seed = config.bench.base_seed;
    plan.problem = resolve_problem(config);
    plan.settings = config.algorithms;
    return plan;
}

}  // namespace shakebal
