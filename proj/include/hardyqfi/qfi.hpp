#pragma once

// Quantum Fisher information of the Hardy phase-estimation scenario, with and
// without post-selection.
//
// The post-selected QFI is available through four routes that share no
// intermediate values:
//   matrix   - matrix elements of S and Pi in |phi0>
//   decomp   - bound times efficiency bracket, from closed-form scalars in x
//   closed   - the rational function of x
//   fd       - central differences on the normalized post-selected family
// Agreement between them is the main correctness check of this library.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "hardyqfi/errors.hpp"
#include "hardyqfi/hardy.hpp"
#include "hardyqfi/qcore.hpp"
#include "hardyqfi/tolerance.hpp"

namespace hardyqfi {

namespace detail {

inline void require_unit_interval(double x, const char* who) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError(std::string(who) + ": x must lie in [0, 1], got " + std::to_string(x));
    }
}

inline void require_fd_step(double h, const char* who) {
    if (!(h >= tol::fd_step_min && h <= tol::fd_step_max)) {
        throw DomainError(std::string(who) + ": finite-difference step must lie in [1e-7, 1e-3], got " +
                          std::to_string(h));
    }
}

}  // namespace detail

/// Scalar closed forms in x = |<0|a>|^2. Used as the analytic side of every
/// cross-check, never as inputs to the matrix routes.
namespace closed_form {

inline double p_aa(double x) { return x * x * (1.0 - x) / (1.0 + x); }

inline double p_pi(double x) { return 1.0 - 9.0 * p_aa(x); }

inline double exp_s(double x) { return (1.0 - 3.0 * x) / (1.0 + x); }

inline double var_s(double x) {
    const double e = exp_s(x);
    return 1.0 - e * e;
}

inline double i0(double x) { return 4.0 * var_s(x); }

inline double i_select(double x) {
    detail::require_unit_interval(x, "i_select");
    const double x2 = x * x;
    const double den = 1.0 + x - 9.0 * x2 + 9.0 * x2 * x;
    const double om = 1.0 - x;
    return 32.0 * x * om * om * om / (den * den);
}

inline double ratio(double x) {
    detail::require_unit_interval(x, "ratio");
    const double x2 = x * x;
    const double q = (1.0 - x2) / (1.0 + x - 9.0 * x2 + 9.0 * x2 * x);
    return q * q;
}

}  // namespace closed_form

/// A value that is either computed directly or taken as an analytic limit at a 0/0 point.
struct LimitValued {
    double value = 0.0;
    bool is_limit = false;
};

struct Efficiency {
    double value = 0.0;
    bool is_limit = false;
    /// Set when the computed value lies outside [0, 1] by more than the analysis tolerance.
    bool out_of_range = false;
};

/// Two-outcome projective measurement {I - P, P}; the tracked outcome is P.
class BinaryMeasurement {
public:
    /// Throws PreconditionError unless the operator is a Hermitian idempotent.
    explicit BinaryMeasurement(const Operator<4>& projector) : projector_(projector) {
        if (!projector.is_projector()) {
            throw PreconditionError("BinaryMeasurement: operator is not a projector");
        }
    }

    [[nodiscard]] const Operator<4>& projector() const noexcept { return projector_; }

    [[nodiscard]] BinaryMeasurement complement() const {
        return BinaryMeasurement(Operator<4>::identity() - projector_);
    }

private:
    Operator<4> projector_;
};

/// 4 (<S^2> - <S>^2) in exp(-i theta S)|phi0>.
[[nodiscard]] inline double initial_qfi_at(const HardyScenario& s, double theta) {
    const TwoQubit psi = s.state_at(theta);
    const Operator<4>& gen = s.generator();
    const double m1 = expectation(gen, psi);
    const double m2 = expectation(gen * gen, psi);
    return 4.0 * (m2 - m1 * m1);
}

[[nodiscard]] inline double initial_qfi(const HardyScenario& s) { return initial_qfi_at(s, 0.0); }

/// 4<SPiS>/<Pi> - 4|<PiS>|^2/<Pi>^2 in |phi0>.
[[nodiscard]] inline double post_selected_qfi_matrix(const HardyScenario& s) {
    const TwoQubit& phi = s.phi0();
    const Operator<4>& gen = s.generator();
    const Operator<4>& pi = s.post_selection();
    const double p = expectation(pi, phi);
    if (p <= tol::degenerate_post_selection) {
        throw DegeneratePostSelection("post-selection probability vanishes");
    }
    const double spis = matrix_element(phi, gen * pi * gen, phi).real();
    const double pis = std::norm(matrix_element(phi, pi * gen, phi));
    return 4.0 * spis / p - 4.0 * pis / (p * p);
}

/// (4 dS^2 / P) * (1 - ((1 - P)/P) (<S> + 1/3)^2 / dS^2), from closed-form scalars.
/// Empty when dS^2 is at or below the degenerate-variance threshold.
[[nodiscard]] inline std::optional<double> post_selected_qfi_decomp(const HardyScenario& s) {
    const double x = s.x();
    const double p = closed_form::p_pi(x);
    if (p <= tol::degenerate_post_selection) {
        throw DegeneratePostSelection("post-selection probability vanishes");
    }
    const double e = closed_form::exp_s(x);
    const double v = closed_form::var_s(x);
    if (v <= tol::degenerate_variance) return std::nullopt;
    const double d = e + 1.0 / 3.0;
    const double bracket = 1.0 - ((1.0 - p) / p) * (d * d / v);
    return 4.0 * v / p * bracket;
}

[[nodiscard]] inline double post_selected_qfi_closed(double x) { return closed_form::i_select(x); }

/// Central-difference QFI evaluated at step h and h/2.
struct FdQfi {
    double value = 0.0;
    double value_half_step = 0.0;
    /// |value - value_half_step| exceeds the Richardson flag threshold.
    bool flagged = false;
};

namespace detail {

inline TwoQubit post_selected_state(const HardyScenario& s, double theta) {
    return (s.post_selection() * s.state_at(theta)).normalized();
}

inline double fd_qfi_once(const HardyScenario& s, double theta, double h) {
    const TwoQubit psi = post_selected_state(s, theta);
    // Five-point stencil, O(h^4) truncation error.
    const TwoQubit dpsi = (post_selected_state(s, theta - 2.0 * h) - post_selected_state(s, theta + 2.0 * h) +
                           8.0 * (post_selected_state(s, theta + h) - post_selected_state(s, theta - h))) *
                          Complex(1.0 / (12.0 * h));
    return 4.0 * (dpsi.norm2() - std::norm(inner(psi, dpsi)));
}

}  // namespace detail

/// QFI of Pi exp(-i theta S)|phi0> / norm by central differences, with an h/2 pass.
[[nodiscard]] inline FdQfi post_selected_qfi_fd_checked(const HardyScenario& s, double h = tol::fd_step,
                                                        double theta = 0.0) {
    detail::require_fd_step(h, "post_selected_qfi_fd");
    const double p = expectation(s.post_selection(), s.state_at(theta));
    if (p <= 1e-10) throw DegeneratePostSelection("post-selection probability vanishes");
    FdQfi r;
    r.value = detail::fd_qfi_once(s, theta, h);
    r.value_half_step = detail::fd_qfi_once(s, theta, 0.5 * h);
    r.flagged = std::abs(r.value - r.value_half_step) > tol::fd_richardson_flag;
    return r;
}

[[nodiscard]] inline double post_selected_qfi_fd(const HardyScenario& s, double h = tol::fd_step,
                                                 double theta = 0.0) {
    return post_selected_qfi_fd_checked(s, h, theta).value;
}

/// Upper limit 4 dS^2 / P(Pi) on the post-selected QFI.
[[nodiscard]] inline double ps_bound(const HardyScenario& s) {
    const double p = expectation(s.post_selection(), s.phi0());
    if (p <= tol::degenerate_post_selection) {
        throw DegeneratePostSelection("post-selection probability vanishes");
    }
    return initial_qfi(s) / p;
}

/// P(Pi) I_select / (4 dS^2). At dS^2 -> 0 (x in {0, 1}) the analytic limits
/// 1 (x -> 0) and 0 (x -> 1) are returned and tagged.
[[nodiscard]] inline Efficiency conversion_efficiency(const HardyScenario& s) {
    const double i0 = initial_qfi(s);
    Efficiency e;
    if (i0 / 4.0 <= tol::degenerate_variance) {
        e.value = s.x() < 0.5 ? 1.0 : 0.0;
        e.is_limit = true;
        return e;
    }
    const double p = expectation(s.post_selection(), s.phi0());
    e.value = p * post_selected_qfi_matrix(s) / i0;
    e.out_of_range = e.value < -tol::analysis || e.value > 1.0 + tol::analysis;
    return e;
}

/// Closed-form I_select / I_0.
[[nodiscard]] inline double enhancement_ratio(double x) { return closed_form::ratio(x); }

/// I_select / I_0 from the matrix routes; empty where I_0 vanishes.
[[nodiscard]] inline std::optional<double> enhancement_ratio_routes(const HardyScenario& s) {
    const double i0 = initial_qfi(s);
    if (i0 <= tol::structural) return std::nullopt;
    return post_selected_qfi_matrix(s) / i0;
}

/// Inverse squared estimator uncertainty (d<M>/dtheta)^2 / dM^2 at theta0.
[[nodiscard]] inline double estimator_sensitivity(const HardyScenario& s, const Operator<4>& m, double theta0,
                                                  double h = tol::fd_step) {
    if (!m.is_hermitian()) throw PreconditionError("estimator_sensitivity: observable is not Hermitian");
    detail::require_fd_step(h, "estimator_sensitivity");
    const TwoQubit psi = s.state_at(theta0);
    const double mean = expectation(m, psi);
    const double var = expectation(m * m, psi) - mean * mean;
    if (var <= tol::structural) {
        throw UndefinedQuantity("estimator_sensitivity: observable variance vanishes");
    }
    const double slope = (expectation(m, s.state_at(theta0 + h)) - expectation(m, s.state_at(theta0 - h))) /
                         (2.0 * h);
    return slope * slope / var;
}

/// Probability of the tracked outcome in exp(-i theta S)|phi0>.
[[nodiscard]] inline double outcome_probability(const HardyScenario& s, const BinaryMeasurement& meas,
                                                double theta) {
    return std::clamp(expectation(meas.projector(), s.state_at(theta)), 0.0, 1.0);
}

/// (dP/dtheta)^2 / (P (1 - P)) for a two-outcome measurement.
[[nodiscard]] inline double classical_fisher_binary(const HardyScenario& s, const BinaryMeasurement& meas,
                                                    double theta0, double h = tol::fd_step) {
    detail::require_fd_step(h, "classical_fisher_binary");
    const double p = outcome_probability(s, meas, theta0);
    if (!(p > tol::structural && p < 1.0 - tol::structural)) {
        throw UndefinedQuantity("classical_fisher_binary: outcome probability is 0 or 1");
    }
    const double dp =
        (outcome_probability(s, meas, theta0 + h) - outcome_probability(s, meas, theta0 - h)) / (2.0 * h);
    return dp * dp / (p * (1.0 - p));
}

/// Every scalar output for one scenario.
struct QfiReport {
    double x = 0.0;
    double phase = 0.0;
    double p_aa = 0.0;
    double p_pi = 0.0;
    double exp_s = 0.0;
    double var_s = 0.0;
    double i0 = 0.0;
    double i_select_matrix = 0.0;
    std::optional<double> i_select_decomp;
    double i_select_closed = 0.0;
    double i_select_fd = 0.0;
    bool fd_flagged = false;
    double bound = 0.0;
    Efficiency eta;
    LimitValued ratio;
    double ratio_closed = 0.0;
    std::optional<Complex> weak_value;
    double violation = 0.0;

    /// The reported post-selected QFI (matrix route).
    [[nodiscard]] double i_select() const noexcept { return i_select_matrix; }
};

[[nodiscard]] inline QfiReport make_report(const HardyScenario& s) {
    const ParadoxStats st = paradox_stats(s);
    QfiReport r;
    r.x = s.x();
    r.phase = s.phase();
    r.p_aa = st.p_aa;
    r.p_pi = st.p_pi;
    r.exp_s = st.exp_s;
    r.var_s = 1.0 - st.exp_s * st.exp_s;
    r.i0 = initial_qfi(s);
    r.i_select_matrix = post_selected_qfi_matrix(s);
    r.i_select_decomp = post_selected_qfi_decomp(s);
    r.i_select_closed = post_selected_qfi_closed(s.x());
    const FdQfi fd = post_selected_qfi_fd_checked(s);
    r.i_select_fd = fd.value;
    r.fd_flagged = fd.flagged;
    r.bound = ps_bound(s);
    r.eta = conversion_efficiency(s);
    r.ratio_closed = enhancement_ratio(s.x());
    if (auto q = enhancement_ratio_routes(s)) {
        r.ratio = {*q, false};
    } else {
        r.ratio = {r.ratio_closed, true};
    }
    r.weak_value = st.weak_value;
    r.violation = st.violation;
    return r;
}

[[nodiscard]] inline QfiReport make_report(double x, double phase = 0.0) {
    return make_report(HardyScenario(x, phase));
}

}  // namespace hardyqfi
