#pragma once

// Invariant suites run by `hardyqfi verify`. Each suite scans a grid in x
// (and a set of phases where relevant) and records the largest deviation seen.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hardyqfi/analysis.hpp"
#include "hardyqfi/hardy.hpp"
#include "hardyqfi/qfi.hpp"
#include "hardyqfi/tolerance.hpp"

namespace hardyqfi {

struct SuiteResult {
    std::string name;
    double max_deviation = 0.0;
    double threshold = 0.0;
    bool passed = false;
    std::string note;
};

struct VerifyOptions {
    int grid = 501;
    /// Coefficient in P(Pi) = 1 - c P(a,a). Only a test can have a reason to change it.
    double identity_factor = 9.0;
};

inline constexpr std::array<double, 5> kVerifyPhases{0.0, 0.7, std::numbers::pi / 2, 2.0, std::numbers::pi};

/// Open interval (0.002, 0.998) sampled uniformly.
[[nodiscard]] inline std::vector<double> interior_grid(int n) { return uniform_grid(0.002, 0.998, n); }

namespace detail {

inline SuiteResult finish(std::string name, double dev, double threshold, std::string note = {}) {
    return {std::move(name), dev, threshold, dev <= threshold, std::move(note)};
}

}  // namespace detail

[[nodiscard]] inline SuiteResult route_equivalence_suite(int grid) {
    double dev = 0.0;
    for (double x : interior_grid(grid)) {
        const HardyScenario s(x);
        const double m = post_selected_qfi_matrix(s);
        const double c = post_selected_qfi_closed(x);
        dev = std::max(dev, std::abs(m - c));
        if (auto d = post_selected_qfi_decomp(s)) dev = std::max({dev, std::abs(*d - c), std::abs(*d - m)});
        if (auto r = enhancement_ratio_routes(s)) dev = std::max(dev, std::abs(*r - enhancement_ratio(x)));
    }
    return detail::finish("route equivalence (matrix/decomp/closed, ratio)", dev, tol::analysis);
}

[[nodiscard]] inline SuiteResult fd_oracle_suite(int grid) {
    double dev = 0.0;
    int flagged = 0;
    for (double x : interior_grid(grid)) {
        const HardyScenario s(x);
        const FdQfi fd = post_selected_qfi_fd_checked(s);
        flagged += fd.flagged ? 1 : 0;
        dev = std::max(dev, std::abs(fd.value - post_selected_qfi_matrix(s)));
    }
    return detail::finish("finite-difference oracle", dev, 1e-5,
                          flagged ? std::to_string(flagged) + " points flagged by h/2 pass" : "");
}

/// P(Pi) = 1 - 9 P(a,a) at every grid point and phase.
[[nodiscard]] inline SuiteResult identity_suite(int grid, double factor = 9.0) {
    double dev = 0.0;
    for (double x : interior_grid(grid)) {
        for (double ph : kVerifyPhases) {
            const ParadoxStats st = paradox_stats(HardyScenario(x, ph));
            dev = std::max(dev, std::abs(st.p_pi - (1.0 - factor * st.p_aa)));
        }
    }
    return detail::finish("post-selection probability identity", dev, tol::structural);
}

/// <a,a|S|phi0>/<a,a|phi0> = -3 at every interior grid point and phase.
[[nodiscard]] inline SuiteResult weak_value_suite(int grid) {
    double dev = 0.0;
    int undefined = 0;
    for (double x : interior_grid(grid)) {
        for (double ph : kVerifyPhases) {
            const ParadoxStats st = paradox_stats(HardyScenario(x, ph));
            if (st.weak_value) {
                dev = std::max(dev, std::abs(*st.weak_value - Complex(-3.0, 0.0)));
            } else {
                ++undefined;
            }
        }
    }
    SuiteResult r = detail::finish("anomalous weak value", dev, tol::analysis);
    if (undefined) {
        r.passed = false;
        r.note = std::to_string(undefined) + " interior points with undefined weak value";
    }
    return r;
}

/// The three forbidden overlaps vanish, endpoints included.
[[nodiscard]] inline SuiteResult orthogonality_suite(int grid) {
    double dev = 0.0;
    for (double x : uniform_grid(0.0, 1.0, grid)) {
        for (double ph : kVerifyPhases) {
            const HardyScenario s(x, ph);
            const Qubit zero = HardyScenario::zero();
            const Qubit one = HardyScenario::one();
            dev = std::max({dev, std::abs(inner(s.phi0(), tensor(s.a(), zero))),
                            std::abs(inner(s.phi0(), tensor(zero, s.a()))),
                            std::abs(inner(s.phi0(), tensor(one, one)))});
        }
    }
    return detail::finish("orthogonality of |phi0> to |a,0>, |0,a>, |1,1>", dev, tol::structural);
}

[[nodiscard]] inline SuiteResult phase_invariance_suite(int grid) {
    double dev = 0.0;
    for (double x : uniform_grid(0.0, 1.0, grid)) {
        const ParadoxStats ref = paradox_stats(HardyScenario(x));
        for (double ph : kVerifyPhases) {
            const ParadoxStats st = paradox_stats(HardyScenario(x, ph));
            dev = std::max({dev, std::abs(st.p_aa - ref.p_aa), std::abs(st.p_a0 - ref.p_a0),
                            std::abs(st.p_0a - ref.p_0a), std::abs(st.p_11 - ref.p_11),
                            std::abs(st.violation - ref.violation), std::abs(st.p_pi - ref.p_pi),
                            std::abs(st.exp_s - ref.exp_s)});
        }
    }
    return detail::finish("phase invariance of paradox statistics", dev, tol::structural);
}

/// Overlap-derived P(a,a) and <S> against their closed forms.
[[nodiscard]] inline SuiteResult closed_form_suite(int grid) {
    double dev = 0.0;
    for (double x : uniform_grid(0.0, 1.0, grid)) {
        const ParadoxStats st = paradox_stats(HardyScenario(x));
        dev = std::max({dev, std::abs(st.p_aa - closed_form::p_aa(x)), std::abs(st.exp_s - closed_form::exp_s(x))});
    }
    return detail::finish("closed forms of P(a,a) and <S>", dev, tol::structural);
}

/// I_select <= 4 dS^2 / P(Pi), with equality only at x = 1/2.
[[nodiscard]] inline SuiteResult bound_suite(int grid) {
    double excess = -1e300;
    bool saturation_elsewhere = false;
    for (double x : interior_grid(grid)) {
        const HardyScenario s(x);
        const double gap = ps_bound(s) - post_selected_qfi_matrix(s);
        excess = std::max(excess, -gap);
        if (std::abs(gap) < tol::analysis && std::abs(x - 0.5) >= 1e-6) saturation_elsewhere = true;
    }
    SuiteResult r = detail::finish("post-selection bound", std::max(excess, 0.0), tol::analysis);
    if (saturation_elsewhere) {
        r.passed = false;
        r.note = "bound saturated away from x = 1/2";
    }
    return r;
}

/// eta equals the efficiency bracket 1 - ((1-P)/P) (<S> + 1/3)^2 / dS^2 and stays in [0, 1].
[[nodiscard]] inline SuiteResult efficiency_suite(int grid) {
    double dev = 0.0;
    bool out_of_range = false;
    for (double x : interior_grid(grid)) {
        const HardyScenario s(x);
        const Efficiency e = conversion_efficiency(s);
        const double p = closed_form::p_pi(x);
        const double d = closed_form::exp_s(x) + 1.0 / 3.0;
        const double bracket = 1.0 - ((1.0 - p) / p) * d * d / closed_form::var_s(x);
        dev = std::max(dev, std::abs(e.value - bracket));
        out_of_range = out_of_range || e.out_of_range;
    }
    SuiteResult r = detail::finish("conversion efficiency identity", dev, tol::analysis);
    if (out_of_range) {
        r.passed = false;
        r.note = "efficiency outside [0, 1]";
    }
    return r;
}

/// Pi is a rank-3 projector and S an involution.
[[nodiscard]] inline SuiteResult operator_structure_suite(int grid) {
    double dev = 0.0;
    for (double x : uniform_grid(0.0, 1.0, grid)) {
        for (double ph : kVerifyPhases) {
            const HardyScenario s(x, ph);
            const Operator<4>& pi = s.post_selection();
            const Operator<4>& gen = s.generator();
            dev = std::max({dev, pi.max_abs_diff(pi * pi), pi.max_abs_diff(pi.adjoint()),
                            std::abs(pi.trace() - Complex(3.0)),
                            (gen * gen).max_abs_diff(Operator<4>::identity())});
        }
    }
    return detail::finish("projector and generator structure", dev, tol::structural);
}

[[nodiscard]] inline std::vector<SuiteResult> run_verification(const VerifyOptions& opt = {}) {
    if (opt.grid < 2) throw DomainError("verify: grid must have at least 2 points");
    return {
        route_equivalence_suite(opt.grid),  fd_oracle_suite(opt.grid),
        identity_suite(opt.grid, opt.identity_factor), weak_value_suite(opt.grid),
        orthogonality_suite(opt.grid),
        phase_invariance_suite(opt.grid),   closed_form_suite(opt.grid),
        bound_suite(opt.grid),              efficiency_suite(opt.grid),
        operator_structure_suite(opt.grid),
    };
}

}  // namespace hardyqfi
