#pragma once

// Sweeps over x, one-dimensional extremum and threshold search, and the data
// behind the three result figures.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hardyqfi/errors.hpp"
#include "hardyqfi/hardy.hpp"
#include "hardyqfi/qfi.hpp"

namespace hardyqfi {

enum class Metric { ISelect, PAa, Ratio, Eta };

[[nodiscard]] inline std::string_view metric_name(Metric m) {
    switch (m) {
        case Metric::ISelect: return "i_select";
        case Metric::PAa: return "p_aa";
        case Metric::Ratio: return "ratio";
        case Metric::Eta: return "eta";
    }
    return "?";
}

/// Value of a metric at x, evaluated through the matrix routes.
[[nodiscard]] inline double metric_value(Metric m, double x) {
    const HardyScenario s(x);
    switch (m) {
        case Metric::ISelect: return post_selected_qfi_matrix(s);
        case Metric::PAa: return paradox_stats(s).p_aa;
        case Metric::Ratio: {
            if (auto r = enhancement_ratio_routes(s)) return *r;
            return enhancement_ratio(x);
        }
        case Metric::Eta: return conversion_efficiency(s).value;
    }
    return 0.0;
}

struct SweepTable {
    double x_min = 0.0;
    double x_max = 1.0;
    int n_points = 0;
    std::vector<QfiReport> rows;
};

/// x_min + i (x_max - x_min)/(n - 1), last point exactly x_max.
[[nodiscard]] inline std::vector<double> uniform_grid(double x_min, double x_max, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    const double step = (x_max - x_min) / static_cast<double>(n - 1);
    for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = x_min + step * static_cast<double>(i);
    xs.back() = x_max;
    return xs;
}

/// n equally spaced reports on [x_min, x_max], endpoints included.
[[nodiscard]] inline SweepTable sweep(double x_min, double x_max, int n) {
    if (!(x_min >= 0.0 && x_max <= 1.0 && x_min < x_max)) {
        throw DomainError("sweep: need 0 <= x_min < x_max <= 1");
    }
    if (n < 2) throw DomainError("sweep: need at least 2 points");
    SweepTable t{x_min, x_max, n, {}};
    t.rows.reserve(static_cast<std::size_t>(n));
    for (double x : uniform_grid(x_min, x_max, n)) t.rows.push_back(make_report(x));
    return t;
}

struct ExtremumResult {
    double x_star = 0.0;
    double value = 0.0;
    Metric metric = Metric::ISelect;
    std::pair<double, double> bracket{0.0, 1.0};
    /// Width of the final search interval.
    double tolerance_achieved = 0.0;
};

namespace detail {

inline double checked_metric(Metric m, double x) {
    const double v = metric_value(m, x);
    if (!std::isfinite(v)) {
        throw NonFiniteMetric("metric " + std::string(metric_name(m)) + " is not finite at x = " +
                              std::to_string(x));
    }
    return v;
}

inline void require_bracket(std::pair<double, double> b) {
    if (!(b.first >= 0.0 && b.second <= 1.0 && b.first < b.second)) {
        throw DomainError("bracket must satisfy 0 <= lo < hi <= 1");
    }
}

}  // namespace detail

/// Golden-section maximization on a unimodal bracket.
[[nodiscard]] inline ExtremumResult find_max(Metric m, std::pair<double, double> bracket, double tolerance) {
    detail::require_bracket(bracket);
    if (!(tolerance >= 1e-10)) throw DomainError("find_max: tolerance must be >= 1e-10");

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = bracket.first;
    double hi = bracket.second;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = detail::checked_metric(m, c);
    double fd = detail::checked_metric(m, d);
    while (hi - lo > tolerance) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = detail::checked_metric(m, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = detail::checked_metric(m, d);
        }
    }
    ExtremumResult r;
    r.x_star = 0.5 * (lo + hi);
    r.value = detail::checked_metric(m, r.x_star);
    r.metric = m;
    r.bracket = bracket;
    r.tolerance_achieved = hi - lo;
    return r;
}

/// Bisection for metric(x) = target; requires exactly one sign change on the bracket.
[[nodiscard]] inline double find_threshold(Metric m, double target, std::pair<double, double> bracket,
                                           double tolerance) {
    detail::require_bracket(bracket);
    if (!(tolerance > 0.0)) throw DomainError("find_threshold: tolerance must be positive");
    double lo = bracket.first;
    double hi = bracket.second;
    double g_lo = detail::checked_metric(m, lo) - target;
    const double g_hi = detail::checked_metric(m, hi) - target;
    if (g_lo == 0.0) return lo;
    if (g_hi == 0.0) return hi;
    if ((g_lo > 0.0) == (g_hi > 0.0)) {
        throw BracketingError("find_threshold: " + std::string(metric_name(m)) + " - " + std::to_string(target) +
                              " does not change sign on [" + std::to_string(lo) + ", " + std::to_string(hi) +
                              "]");
    }
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        const double g = detail::checked_metric(m, mid) - target;
        if (g == 0.0) return mid;
        if ((g > 0.0) == (g_lo > 0.0)) {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Named search presets for the reported optima and thresholds.
struct SearchPreset {
    std::string_view name;
    Metric metric;
    /// Empty for a maximization, otherwise the threshold level.
    std::optional<double> target;
    std::pair<double, double> bracket;
    std::string_view description;
};

inline constexpr std::array<SearchPreset, 6> kSearchPresets{{
    {"i_select", Metric::ISelect, std::nullopt, {0.3, 0.8}, "maximum of the post-selected QFI"},
    {"p_aa", Metric::PAa, std::nullopt, {0.3, 0.9}, "maximum of the contextual probability P(a,a)"},
    {"ratio", Metric::Ratio, std::nullopt, {0.3, 0.8}, "maximum of I_select / I_0"},
    {"eta-half", Metric::Eta, 0.5, {0.55, 0.9}, "x where the conversion efficiency equals 1/2"},
    {"ratio-one-low", Metric::Ratio, 1.0, {0.01, 0.4}, "lower crossing I_select / I_0 = 1"},
    {"ratio-one-high", Metric::Ratio, 1.0, {0.6, 0.95}, "upper crossing I_select / I_0 = 1"},
}};

[[nodiscard]] inline const SearchPreset* find_preset(std::string_view name) {
    for (const auto& p : kSearchPresets) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

inline constexpr double kDefaultSearchTolerance = 1e-9;
inline constexpr int kDefaultFigurePoints = 1001;

enum class FigureId { Fig1 = 1, Fig2 = 2, Fig3 = 3 };

/// Vertical reference line; `values` aligns with FigureData::columns[1..].
struct FigureMarker {
    std::string label;
    double x = 0.0;
    std::vector<double> values;
};

struct FigureData {
    FigureId id = FigureId::Fig1;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<FigureMarker> markers;
};

/// Projects a uniform sweep on [0, 1] onto the columns of one figure.
[[nodiscard]] inline FigureData figure_data(FigureId id, int n = kDefaultFigurePoints) {
    const SweepTable table = sweep(0.0, 1.0, n);
    FigureData fig;
    fig.id = id;
    auto at = [](double x) { return make_report(x); };

    switch (id) {
        case FigureId::Fig1: {
            fig.columns = {"x", "i_select", "p_aa"};
            for (const auto& r : table.rows) fig.rows.push_back({r.x, r.i_select(), r.p_aa});
            for (const auto* name : {"i_select", "p_aa"}) {
                const SearchPreset& p = *find_preset(name);
                const ExtremumResult e = find_max(p.metric, p.bracket, kDefaultSearchTolerance);
                const QfiReport r = at(e.x_star);
                fig.markers.push_back({"max_" + std::string(name), e.x_star, {r.i_select(), r.p_aa}});
            }
            break;
        }
        case FigureId::Fig2: {
            fig.columns = {"x", "eta"};
            for (const auto& r : table.rows) fig.rows.push_back({r.x, r.eta.value});
            break;
        }
        case FigureId::Fig3: {
            fig.columns = {"x", "ratio"};
            for (const auto& r : table.rows) fig.rows.push_back({r.x, r.ratio.value});
            const std::array<std::pair<const char*, const char*>, 2> crossings{
                {{"ratio-one-low", "ratio_one_low"}, {"ratio-one-high", "ratio_one_high"}}};
            for (const auto& [name, label] : crossings) {
                const SearchPreset& p = *find_preset(name);
                const double x = find_threshold(p.metric, *p.target, p.bracket, kDefaultSearchTolerance);
                fig.markers.push_back({label, x, {at(x).ratio.value}});
            }
            break;
        }
    }
    return fig;
}

}  // namespace hardyqfi
