#pragma once

// Monte Carlo phase estimation with a two-outcome measurement.
//
// Each trial draws `shots` outcomes at theta_true, then inverts the outcome
// frequency k/N through the monotone branch of P(theta) inside a window
// around theta_true. The spread of the estimates is compared with the
// Cramer-Rao prediction 1 / (N * CFI).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hardyqfi/errors.hpp"
#include "hardyqfi/hardy.hpp"
#include "hardyqfi/qfi.hpp"

namespace hardyqfi {

/// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based uniform stream keyed by (seed, stream). Draw i is a pure
/// function of (seed, stream, i), so sequences are identical on every platform
/// and independent of how trials are scheduled.
class UniformStream {
public:
    using result_type = std::uint64_t;

    UniformStream(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_(mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL))) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return mix64(key_ + (++counter_) * kGamma); }

    /// Uniform on [0, 1) with 53 random bits.
    double next_double() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    [[nodiscard]] std::uint64_t position() const noexcept { return counter_; }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

[[nodiscard]] inline UniformStream rng_stream(std::uint64_t seed, std::uint64_t stream) {
    return UniformStream(seed, stream);
}

struct McConfig {
    BinaryMeasurement measurement;
    long shots = 100000;
    double theta_true = 0.0;
    std::uint64_t seed = 1;
    int trials = 200;
    /// Half-width of the ML inversion window around theta_true.
    double window = 0.2;
};

struct McResult {
    double theta_hat_mean = 0.0;
    double theta_hat_var = 0.0;
    double predicted_var = 0.0;
    int n_valid_trials = 0;
    int n_dropped_trials = 0;

    [[nodiscard]] double variance_ratio() const noexcept { return theta_hat_var / predicted_var; }
};

/// Projector onto |phi0>, the default estimator measurement.
[[nodiscard]] inline BinaryMeasurement initial_state_measurement(const HardyScenario& s) {
    return BinaryMeasurement(Operator<4>::projector(s.phi0()));
}

namespace detail {

inline void validate(const HardyScenario& s, const McConfig& cfg) {
    using K = SimulationError::Kind;
    if (cfg.shots < 100) {
        throw SimulationError(K::InvalidConfig, "shots must be >= 100, got " + std::to_string(cfg.shots));
    }
    if (cfg.trials < 1) throw SimulationError(K::InvalidConfig, "trials must be >= 1");
    if (!(cfg.window > 0.0) || !std::isfinite(cfg.theta_true)) {
        throw SimulationError(K::InvalidConfig, "window must be positive and theta finite");
    }
    const double p = outcome_probability(s, cfg.measurement, cfg.theta_true);
    if (!(p > 1e-6 && p < 1.0 - 1e-6)) {
        throw SimulationError(K::InvalidConfig,
                              "outcome probability at theta_true must lie in (1e-6, 1 - 1e-6), got " +
                                  std::to_string(p));
    }
}

/// +1 for strictly increasing, -1 for strictly decreasing, 0 otherwise.
inline int monotonic_direction(const HardyScenario& s, const BinaryMeasurement& m, double lo, double hi) {
    constexpr int kSamples = 200;
    int dir = 0;
    double prev = outcome_probability(s, m, lo);
    for (int i = 1; i <= kSamples; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) / kSamples;
        const double p = outcome_probability(s, m, t);
        const int d = p > prev ? 1 : (p < prev ? -1 : 0);
        if (d == 0 || (dir != 0 && d != dir)) return 0;
        dir = d;
        prev = p;
    }
    return dir;
}

}  // namespace detail

/// Throws SimulationError for invalid configurations, a non-monotone P(theta)
/// on the window, or fewer than two valid trials.
[[nodiscard]] inline McResult simulate(const HardyScenario& s, const McConfig& cfg) {
    using K = SimulationError::Kind;
    detail::validate(s, cfg);

    const double lo = cfg.theta_true - cfg.window;
    const double hi = cfg.theta_true + cfg.window;
    const int dir = detail::monotonic_direction(s, cfg.measurement, lo, hi);
    if (dir == 0) {
        throw SimulationError(K::UnsuitableMeasurement,
                              "outcome probability is not strictly monotonic on the inversion window");
    }
    const double p_lo = outcome_probability(s, cfg.measurement, lo);
    const double p_hi = outcome_probability(s, cfg.measurement, hi);
    const double f_min = std::min(p_lo, p_hi);
    const double f_max = std::max(p_lo, p_hi);
    const double p_true = outcome_probability(s, cfg.measurement, cfg.theta_true);

    std::vector<double> estimates;
    estimates.reserve(static_cast<std::size_t>(cfg.trials));
    McResult res;
    for (int t = 0; t < cfg.trials; ++t) {
        UniformStream rng = rng_stream(cfg.seed, static_cast<std::uint64_t>(t));
        long k = 0;
        for (long i = 0; i < cfg.shots; ++i) {
            if (rng.next_double() < p_true) ++k;
        }
        const double f = static_cast<double>(k) / static_cast<double>(cfg.shots);
        if (f < f_min || f > f_max) {
            ++res.n_dropped_trials;
            continue;
        }
        // Bisection on the monotone branch: g(theta) = dir * (P(theta) - f) is increasing.
        double a = lo;
        double b = hi;
        for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
            const double mid = 0.5 * (a + b);
            const double g = dir * (outcome_probability(s, cfg.measurement, mid) - f);
            if (g < 0.0) {
                a = mid;
            } else {
                b = mid;
            }
        }
        estimates.push_back(0.5 * (a + b));
    }

    res.n_valid_trials = static_cast<int>(estimates.size());
    if (res.n_valid_trials < 2) {
        throw SimulationError(K::EstimationFailure, "fewer than two trials produced a valid estimate");
    }
    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= static_cast<double>(estimates.size());
    double ss = 0.0;
    for (double e : estimates) ss += (e - mean) * (e - mean);
    res.theta_hat_mean = mean;
    res.theta_hat_var = ss / static_cast<double>(estimates.size() - 1);

    const double cfi = classical_fisher_binary(s, cfg.measurement, cfg.theta_true);
    res.predicted_var = 1.0 / (static_cast<double>(cfg.shots) * cfi);
    return res;
}

}  // namespace hardyqfi
