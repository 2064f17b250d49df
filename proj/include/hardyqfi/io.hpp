#pragma once

// CSV serialization of sweeps and figures, and a minimal SVG line plot.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <locale>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hardyqfi/analysis.hpp"
#include "hardyqfi/errors.hpp"
#include "hardyqfi/qfi.hpp"

namespace hardyqfi::io {

inline constexpr std::string_view kSweepHeader = "x,p_aa,p_pi,exp_s,var_s,i0,i_select,bound,eta,ratio";
inline constexpr std::size_t kSweepColumns = 10;

/// 12 significant digits, '.' separator, independent of the global locale.
[[nodiscard]] inline std::string format_number(double v) {
    if (v == 0.0) return "0";  // folds -0
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(12);
    os << v;
    return os.str();
}

[[nodiscard]] inline std::array<double, kSweepColumns> sweep_columns(const QfiReport& r) {
    return {r.x, r.p_aa, r.p_pi, r.exp_s, r.var_s, r.i0, r.i_select(), r.bound, r.eta.value, r.ratio.value};
}

inline void write_sweep_csv(std::ostream& os, const SweepTable& table) {
    os << kSweepHeader << '\n';
    for (const auto& r : table.rows) {
        const auto cols = sweep_columns(r);
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) os << ',';
            os << format_number(cols[i]);
        }
        os << '\n';
    }
}

namespace detail {

inline std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_double(const std::string& s) {
    std::istringstream is(s);
    is.imbue(std::locale::classic());
    double v = 0.0;
    is >> v;
    if (is.fail() || !is.eof()) throw DomainError("not a number: '" + s + "'");
    return v;
}

}  // namespace detail

/// Reads a sweep CSV back into rows of the ten columns. Throws DomainError on a
/// bad header or malformed row.
[[nodiscard]] inline std::vector<std::array<double, kSweepColumns>> read_sweep_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kSweepHeader) throw DomainError("unexpected sweep CSV header");
    std::vector<std::array<double, kSweepColumns>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto fields = detail::split_commas(line);
        if (fields.size() != kSweepColumns) throw DomainError("sweep CSV row has wrong column count");
        std::array<double, kSweepColumns> row{};
        for (std::size_t i = 0; i < kSweepColumns; ++i) row[i] = detail::parse_double(fields[i]);
        rows.push_back(row);
    }
    return rows;
}

/// First column `kind` is `curve` for grid rows or the marker label.
inline void write_figure_csv(std::ostream& os, const FigureData& fig) {
    os << "kind";
    for (const auto& c : fig.columns) os << ',' << c;
    os << '\n';
    for (const auto& row : fig.rows) {
        os << "curve";
        for (double v : row) os << ',' << format_number(v);
        os << '\n';
    }
    for (const auto& m : fig.markers) {
        os << m.label << ',' << format_number(m.x);
        for (double v : m.values) os << ',' << format_number(v);
        os << '\n';
    }
}

namespace detail {

inline std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace detail

/// Standalone SVG 1.1 line plot of a figure. Each data column gets its own
/// vertical scale: the first on the left axis, a second one on the right.
/// Markers are drawn as dotted vertical lines.
[[nodiscard]] inline std::string render_svg(const FigureData& fig) {
    constexpr double kWidth = 640.0;
    constexpr double kHeight = 420.0;
    constexpr double kLeft = 70.0;
    constexpr double kRight = 70.0;
    constexpr double kTop = 30.0;
    constexpr double kBottom = 50.0;
    constexpr std::array<const char*, 2> kColors{"#1f4e9c", "#c0392b"};
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;

    const std::size_t n_series = fig.columns.size() > 1 ? std::min<std::size_t>(fig.columns.size() - 1, 2) : 0;
    std::array<double, 2> y_max{0.0, 0.0};
    std::array<double, 2> y_min{0.0, 0.0};
    for (const auto& row : fig.rows) {
        for (std::size_t k = 0; k < n_series; ++k) {
            y_max[k] = std::max(y_max[k], row[k + 1]);
            y_min[k] = std::min(y_min[k], row[k + 1]);
        }
    }
    for (std::size_t k = 0; k < n_series; ++k) {
        if (y_max[k] <= y_min[k]) y_max[k] = y_min[k] + 1.0;
        y_max[k] *= 1.05;
    }

    auto sx = [&](double x) { return kLeft + x * pw; };
    auto sy = [&](std::size_t k, double y) { return kTop + ph * (1.0 - (y - y_min[k]) / (y_max[k] - y_min[k])); };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

    // axes
    os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
       << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw << "\" y2=\"" << kTop + ph
       << "\"/>\n"
       << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + ph << "\"/>\n";
    if (n_series == 2) {
        os << "<line x1=\"" << kLeft + pw << "\" y1=\"" << kTop << "\" x2=\"" << kLeft + pw << "\" y2=\""
           << kTop + ph << "\"/>\n";
    }
    os << "</g>\n";

    os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double x = i / 5.0;
        os << "<text x=\"" << detail::fmt_coord(sx(x)) << "\" y=\"" << kTop + ph + 16
           << "\" text-anchor=\"middle\">" << detail::fmt_tick(x) << "</text>\n";
        for (std::size_t k = 0; k < n_series; ++k) {
            const double y = y_min[k] + (y_max[k] - y_min[k]) * i / 5.0;
            const double px = k == 0 ? kLeft - 6 : kLeft + pw + 6;
            os << "<text x=\"" << px << "\" y=\"" << detail::fmt_coord(sy(k, y) + 4) << "\" text-anchor=\""
               << (k == 0 ? "end" : "start") << "\" fill=\"" << kColors[k] << "\">" << detail::fmt_tick(y)
               << "</text>\n";
        }
    }
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12
       << "\" text-anchor=\"middle\">|&lt;0|a&gt;|^2</text>\n";
    for (std::size_t k = 0; k < n_series; ++k) {
        os << "<text x=\"" << (k == 0 ? kLeft : kLeft + pw) << "\" y=\"" << kTop - 10 << "\" text-anchor=\""
           << (k == 0 ? "start" : "end") << "\" fill=\"" << kColors[k] << "\">" << fig.columns[k + 1] << "</text>\n";
    }
    os << "</g>\n";

    for (std::size_t k = 0; k < n_series; ++k) {
        os << "<polyline fill=\"none\" stroke=\"" << kColors[k] << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < fig.rows.size(); ++i) {
            if (i) os << ' ';
            os << detail::fmt_coord(sx(fig.rows[i][0])) << ',' << detail::fmt_coord(sy(k, fig.rows[i][k + 1]));
        }
        os << "\"/>\n";
    }

    for (const auto& m : fig.markers) {
        os << "<line x1=\"" << detail::fmt_coord(sx(m.x)) << "\" y1=\"" << kTop << "\" x2=\""
           << detail::fmt_coord(sx(m.x)) << "\" y2=\"" << kTop + ph
           << "\" stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"2,3\"><title>" << m.label << " "
           << format_number(m.x) << "</title></line>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace hardyqfi::io
