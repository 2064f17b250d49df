#pragma once

// Numerical thresholds shared by every module.

namespace hardyqfi::tol {

// Structural checks: normalization, hermiticity, projector idempotence, S^2 = I.
inline constexpr double structural = 1e-12;

// Agreement between independent analytic routes.
inline constexpr double analysis = 1e-9;

// Finite-difference oracles are truncation/rounding limited.
inline constexpr double finite_difference = 1e-6;

// Squared overlap below which the weak value is undefined.
inline constexpr double weak_value_overlap = 1e-30;

// Post-selection probability at or below which post-selected QFI is degenerate.
inline constexpr double degenerate_post_selection = 1e-12;

// Generator variance at or below which the efficiency form is a 0/0 limit.
inline constexpr double degenerate_variance = 1e-12;

// Default central-difference step and the admissible range.
inline constexpr double fd_step = 1e-5;
inline constexpr double fd_step_min = 1e-7;
inline constexpr double fd_step_max = 1e-3;

// Disagreement between the h and h/2 passes that gets flagged.
inline constexpr double fd_richardson_flag = 1e-5;

}  // namespace hardyqfi::tol
