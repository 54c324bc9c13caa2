#pragma once

// Line-oriented `section.key = value` configuration.
//
//   # comment
//   mechanism.alpha = 180deg      # angles: <x>rad, <x>deg, or bare radians
//   objective.c1_max = auto       # calibrate at startup (the default)
//   bench.algorithms = pso, abc
//
// Unknown keys are rejected; absent keys keep their defaults. Every section
// is re-validated after loading.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shakebal/bench.hpp"

namespace shakebal {

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string origin, std::size_t line, std::string key, const std::string& what);

    const std::string& origin() const noexcept { return origin_; }
    std::size_t line() const noexcept { return line_; }  ///< 0 when not tied to one line
    const std::string& key() const noexcept { return key_; }

private:
    std::string origin_;
    std::size_t line_;
    std::string key_;
};

struct CalibrationSettings {
    std::size_t samples = 1000;
    double fraction = 0.5;
    std::uint64_t seed = 0;
};

struct BenchSettings {
    std::vector<Algorithm> algorithms{std::begin(kAllAlgorithms), std::end(kAllAlgorithms)};
    std::vector<std::size_t> budgets{200, 300};
    std::size_t repeats = 10;
    std::uint64_t base_seed = 1;
    std::size_t jobs = 0;  ///< 0 = all logical processors
};

struct AppConfig {
    MechanismConfig mechanism;
    /// Bounds are resolved from the mechanism unless overridden; limits are
    /// NaN-free only when set explicitly or after resolve_problem().
    ObjectiveSpec objective;
    bool c1_max_auto = true;
    bool c2_max_auto = true;
    CalibrationSettings calibration;
    AlgorithmSettings algorithms;
    BenchSettings bench;
};

AppConfig parse_config_text(std::string_view text, std::string_view origin = "<config>");
AppConfig parse_config(const std::filesystem::path& path);

/// Serializes every key, so parse_config_text(render_config(c)) == c.
std::string render_config(const AppConfig& config);

/// Mechanism plus objective with constraint limits filled in, calibrating
/// the ones marked auto.
Problem resolve_problem(const AppConfig& config);

ExperimentPlan make_plan(const AppConfig& config);

}  // namespace shakebal
