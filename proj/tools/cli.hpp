#pragma once

// Command-line front end. `run_cli` is kept separate from main() so tests can
// drive every subcommand in-process and inspect output and exit codes.
//
// Exit codes: 0 success, 1 verification failure, 2 bad arguments, 3 I/O,
// 4 bracketing, 5 simulation.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef HARDYQFI_VENDORED_CLI11
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#ifdef HARDYQFI_VENDORED_JSON
#include <json.hpp>
#else
#include <nlohmann/json.hpp>
#endif

#include "hardyqfi/analysis.hpp"
#include "hardyqfi/errors.hpp"
#include "hardyqfi/estim.hpp"
#include "hardyqfi/hardy.hpp"
#include "hardyqfi/io.hpp"
#include "hardyqfi/qfi.hpp"
#include "hardyqfi/verify.hpp"

namespace hardyqfi::cli {

enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kBadArguments = 2,
    kIoError = 3,
    kBracketing = 4,
    kSimulation = 5,
};

namespace detail {

inline std::string num(double v) { return io::format_number(v); }

inline std::string weak_value_text(const std::optional<Complex>& wv) {
    if (!wv) return "undefined";
    std::ostringstream os;
    os << num(wv->real()) << (wv->imag() < 0 ? " - " : " + ") << num(std::abs(wv->imag())) << "i";
    return os.str();
}

inline nlohmann::json report_json(const QfiReport& r) {
    nlohmann::json j;
    j["x"] = r.x;
    j["phase"] = r.phase;
    j["p_aa"] = r.p_aa;
    j["p_pi"] = r.p_pi;
    j["exp_s"] = r.exp_s;
    j["var_s"] = r.var_s;
    j["i0"] = r.i0;
    j["i_select"] = r.i_select();
    j["i_select_matrix"] = r.i_select_matrix;
    j["i_select_decomp"] = r.i_select_decomp ? nlohmann::json(*r.i_select_decomp) : nlohmann::json(nullptr);
    j["i_select_closed"] = r.i_select_closed;
    j["i_select_fd"] = r.i_select_fd;
    j["bound"] = r.bound;
    j["eta"] = r.eta.value;
    j["eta_is_limit"] = r.eta.is_limit;
    j["ratio"] = r.ratio.value;
    j["ratio_is_limit"] = r.ratio.is_limit;
    j["ratio_closed"] = r.ratio_closed;
    if (r.weak_value) {
        j["weak_value"] = {{"re", r.weak_value->real()}, {"im", r.weak_value->imag()}};
    } else {
        j["weak_value"] = nullptr;
    }
    j["violation"] = r.violation;
    return j;
}

inline void print_report(std::ostream& out, const QfiReport& r) {
    auto line = [&](const char* key, const std::string& value) {
        out << std::left << std::setw(18) << key << value << '\n';
    };
    auto limit_tag = [](bool is_limit) { return is_limit ? std::string(" (limit)") : std::string(); };
    line("x", num(r.x));
    line("phase", num(r.phase));
    line("p_aa", num(r.p_aa));
    line("p_pi", num(r.p_pi));
    line("exp_s", num(r.exp_s));
    line("var_s", num(r.var_s));
    line("i0", num(r.i0));
    line("i_select", num(r.i_select()));
    line("i_select_decomp", r.i_select_decomp ? num(*r.i_select_decomp) : "undefined");
    line("i_select_closed", num(r.i_select_closed));
    line("i_select_fd", num(r.i_select_fd) + (r.fd_flagged ? " (flagged)" : ""));
    line("bound", num(r.bound));
    line("eta", num(r.eta.value) + limit_tag(r.eta.is_limit));
    line("ratio", num(r.ratio.value) + limit_tag(r.ratio.is_limit));
    line("weak_value", weak_value_text(r.weak_value));
    line("violation", num(r.violation));
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    } catch (const BracketingError& e) {
        err << "error: " << e.what() << '\n';
        return kBracketing;
    } catch (const NonFiniteMetric& e) {
        err << "error: " << e.what() << '\n';
        return kBracketing;
    } catch (const SimulationError& e) {
        err << "error: " << e.what() << '\n';
        return kSimulation;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    }
}

inline bool write_file(const std::string& path, const std::string& contents, std::ostream& err) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        err << "error: cannot open '" << path << "' for writing\n";
        return false;
    }
    f << contents;
    f.flush();
    if (!f) {
        err << "error: failed writing '" << path << "'\n";
        return false;
    }
    return true;
}

inline std::string preset_help() {
    std::ostringstream os;
    os << "Search preset. Available:";
    for (const auto& p : kSearchPresets) {
        os << "\n  " << p.name << ": " << p.description << " on [" << p.bracket.first << ", " << p.bracket.second
           << "]";
    }
    return os.str();
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Post-selected phase estimation in the Hardy scenario", "hardyqfi"};
    app.require_subcommand(1);

    // eval
    double eval_x = 0.0;
    double eval_phase = 0.0;
    bool eval_json = false;
    auto* eval = app.add_subcommand("eval", "Evaluate every quantity at one value of x = |<0|a>|^2");
    eval->add_option("--x", eval_x, "free parameter in [0, 1]")->required();
    eval->add_option("--phase", eval_phase, "argument of <0|a> in radians");
    eval->add_flag("--json", eval_json, "print a JSON object instead of aligned text");

    // sweep
    double sweep_from = 0.0;
    double sweep_to = 1.0;
    int sweep_steps = kDefaultFigurePoints;
    std::string sweep_out;
    auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate all quantities on a uniform grid (CSV)");
    sweep_cmd->add_option("--from", sweep_from, "first x")->capture_default_str();
    sweep_cmd->add_option("--to", sweep_to, "last x")->capture_default_str();
    sweep_cmd->add_option("--steps", sweep_steps, "number of grid points, endpoints included")->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "output CSV path")->required();

    // optimize
    std::string opt_metric;
    double opt_tol = kDefaultSearchTolerance;
    auto* optimize = app.add_subcommand("optimize", "Locate a reported optimum or threshold");
    std::vector<std::string> preset_names;
    for (const auto& p : kSearchPresets) preset_names.emplace_back(p.name);
    optimize->add_option("--metric", opt_metric, detail::preset_help())
        ->required()
        ->check(CLI::IsMember(preset_names));
    optimize->add_option("--tol", opt_tol, "final bracket width")->capture_default_str();

    // verify
    int verify_grid = VerifyOptions{}.grid;
    auto* verify = app.add_subcommand("verify", "Run the invariant suites; nonzero exit on any failure");
    verify->add_option("--grid", verify_grid, "grid points per suite")->capture_default_str();

    // figure
    int fig_id = 1;
    std::string fig_out;
    std::string fig_svg;
    int fig_points = kDefaultFigurePoints;
    auto* figure = app.add_subcommand("figure", "Emit figure data (CSV) and optionally an SVG plot");
    figure->add_option("--id", fig_id, "figure number")->required()->check(CLI::IsMember({1, 2, 3}));
    figure->add_option("--out", fig_out, "output CSV path");
    figure->add_option("--svg", fig_svg, "output SVG path");
    figure->add_option("--points", fig_points, "grid points on [0, 1]")->capture_default_str();

    // simulate
    double sim_x = 0.5;
    double sim_theta = std::numbers::pi / 4;
    long sim_shots = 100000;
    int sim_trials = 200;
    std::uint64_t sim_seed = 1;
    double sim_window = 0.2;
    auto* simulate_cmd =
        app.add_subcommand("simulate", "Monte Carlo estimation with the projector onto |phi0> as measurement");
    simulate_cmd->add_option("--x", sim_x, "free parameter in [0, 1]")->capture_default_str();
    simulate_cmd->add_option("--theta", sim_theta, "true phase in radians")->capture_default_str();
    simulate_cmd->add_option("--shots", sim_shots, "repetitions N per trial")->capture_default_str();
    simulate_cmd->add_option("--trials", sim_trials, "independent trials")->capture_default_str();
    simulate_cmd->add_option("--seed", sim_seed, "random seed")->capture_default_str();
    simulate_cmd->add_option("--window", sim_window, "half-width of the ML inversion window (rad)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadArguments;
    }

    if (eval->parsed()) {
        return detail::guarded(err, [&] {
            const QfiReport r = make_report(eval_x, eval_phase);
            if (eval_json) {
                out << detail::report_json(r).dump(2) << '\n';
            } else {
                detail::print_report(out, r);
            }
            return kOk;
        });
    }

    if (sweep_cmd->parsed()) {
        return detail::guarded(err, [&] {
            const SweepTable table = sweep(sweep_from, sweep_to, sweep_steps);
            std::ostringstream csv;
            io::write_sweep_csv(csv, table);
            if (!detail::write_file(sweep_out, csv.str(), err)) return int(kIoError);
            out << "wrote " << table.rows.size() << " rows to " << sweep_out << '\n';
            return int(kOk);
        });
    }

    if (optimize->parsed()) {
        return detail::guarded(err, [&] {
            const SearchPreset& p = *find_preset(opt_metric);
            out << "metric            " << p.name << '\n';
            if (p.target) {
                const double x = find_threshold(p.metric, *p.target, p.bracket, opt_tol);
                out << "x_star            " << detail::num(x) << '\n'
                    << "value             " << detail::num(metric_value(p.metric, x)) << '\n'
                    << "target            " << detail::num(*p.target) << '\n';
            } else {
                const ExtremumResult e = find_max(p.metric, p.bracket, opt_tol);
                out << "x_star            " << detail::num(e.x_star) << '\n'
                    << "value             " << detail::num(e.value) << '\n'
                    << "bracket_width     " << detail::num(e.tolerance_achieved) << '\n';
            }
            return int(kOk);
        });
    }

    if (verify->parsed()) {
        return detail::guarded(err, [&] {
            const auto t0 = std::chrono::steady_clock::now();
            const auto results = run_verification({verify_grid, 9.0});
            bool all = true;
            for (const auto& r : results) {
                all = all && r.passed;
                out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(50) << r.name
                    << " max dev " << std::scientific << std::setprecision(3) << r.max_deviation << " (limit "
                    << r.threshold << ")" << std::defaultfloat;
                if (!r.note.empty()) out << "  [" << r.note << "]";
                out << '\n';
            }
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            out << (all ? "all suites passed" : "verification FAILED") << " (grid " << verify_grid << ", "
                << std::fixed << std::setprecision(2) << secs << " s)" << std::defaultfloat << '\n';
            return all ? int(kOk) : int(kVerifyFailed);
        });
    }

    if (figure->parsed()) {
        return detail::guarded(err, [&] {
            if (fig_out.empty() && fig_svg.empty()) {
                err << "error: figure needs --out and/or --svg\n";
                return int(kBadArguments);
            }
            const FigureData fig = figure_data(static_cast<FigureId>(fig_id), fig_points);
            if (!fig_out.empty()) {
                std::ostringstream csv;
                io::write_figure_csv(csv, fig);
                if (!detail::write_file(fig_out, csv.str(), err)) return int(kIoError);
                out << "wrote figure " << fig_id << " data to " << fig_out << '\n';
            }
            if (!fig_svg.empty()) {
                if (!detail::write_file(fig_svg, io::render_svg(fig), err)) return int(kIoError);
                out << "wrote figure " << fig_id << " plot to " << fig_svg << '\n';
            }
            for (const auto& m : fig.markers) out << "marker " << m.label << " at x = " << detail::num(m.x) << '\n';
            return int(kOk);
        });
    }

    if (simulate_cmd->parsed()) {
        return detail::guarded(err, [&] {
            const HardyScenario s(sim_x);
            const McConfig cfg{initial_state_measurement(s), sim_shots, sim_theta, sim_seed, sim_trials, sim_window};
            const McResult r = simulate(s, cfg);
            out << "theta_hat_mean    " << detail::num(r.theta_hat_mean) << '\n'
                << "theta_hat_var     " << detail::num(r.theta_hat_var) << '\n'
                << "predicted_var     " << detail::num(r.predicted_var) << '\n'
                << "variance_ratio    " << detail::num(r.variance_ratio()) << '\n'
                << "n_valid_trials    " << r.n_valid_trials << '\n'
                << "n_dropped_trials  " << r.n_dropped_trials << '\n';
            return int(kOk);
        });
    }

    return kBadArguments;
}

}  // namespace hardyqfi::cli
