#pragma once

#include <chrono>
#include <cmath>
#include <span>
#include <sstream>
#include <vector>

#include "shakebal/optimizers.hpp"

namespace shakebal::detail {

inline double checked_eval(const ObjectiveFn& objective, std::span<const double> x, const char* algorithm) {
    const double v = objective(x);
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << algorithm << ": objective returned " << v << " at (";
        for (std::size_t j = 0; j < x.size(); ++j) msg << (j ? ", " : "") << x[j];
        msg << ")";
        throw OptimizerError(msg.str(), std::vector<double>(x.begin(), x.end()));
    }
    return v;
}

/// Monotonic stopwatch with per-iteration checkpoints.
class RunClock {
public:
    using clock = std::chrono::steady_clock;
    static_assert(clock::is_steady, "per-iteration timing needs a monotonic clock");

    RunClock() : start_(clock::now()) {}

    void mark() { checkpoints_.push_back(elapsed()); }
    double elapsed() const { return std::chrono::duration<double>(clock::now() - start_).count(); }
    std::vector<double> take_checkpoints() { return std::move(checkpoints_); }

private:
    clock::time_point start_;
    std::vector<double> checkpoints_;
};

/// Positions uniform in the box, velocities uniform in +-v_max, drawn
/// particle by particle (positions first). Shared by PSO and HGAPSO.
std::vector<Particle> random_particles(const Bounds& bounds, const PsoParams& params, std::size_t count,
                                       CounterRng& init);

inline void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace shakebal::detail
