#pragma once

// Two-qubit Hardy scenario parameterized by x = |<0|a>|^2.
//
// Local observables: F = |1><1| - |0><0| and W = |b><b| - |a><a| with
// |a> = sqrt(x) e^{i phase} |0> + sqrt(1-x) |1> and |b> = <1|a>*|0> - <0|a>*|1>.
// The initial state |phi0> is the unique state orthogonal to |a,0>, |0,a>, |1,1>.

#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "hardyqfi/errors.hpp"
#include "hardyqfi/qcore.hpp"
#include "hardyqfi/tolerance.hpp"

namespace hardyqfi {

enum class LocalObservable { F, W };

class HardyScenario {
public:
    /// Throws DomainError unless 0 <= x <= 1.
    explicit HardyScenario(double x, double phase = 0.0) : x_(x), phase_(phase) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw DomainError("x = |<0|a>|^2 must lie in [0, 1], got " + std::to_string(x));
        }
        if (!std::isfinite(phase)) throw DomainError("phase must be finite");

        const Complex a0 = std::polar(std::sqrt(x), phase);
        const Complex a1 = std::sqrt(1.0 - x);
        a_ = Qubit{a0, a1};
        b_ = Qubit{std::conj(a1), -std::conj(a0)};

        f_ = Operator<2>::projector(Qubit::basis(1)) - Operator<2>::projector(Qubit::basis(0));
        w_ = Operator<2>::projector(b_) - Operator<2>::projector(a_);

        const double inv = 1.0 / std::sqrt(1.0 + x);
        phi0_ = TwoQubit{-std::conj(a1) * inv, std::conj(a0) * inv, std::conj(a0) * inv, 0.0};

        s_ = tensor_op(f_, f_);
        const TwoQubit s_aa = s_ * tensor(a_, a_);
        pi_ = Operator<4>::identity() - Operator<4>::projector(s_aa);
    }

    [[nodiscard]] double x() const noexcept { return x_; }
    [[nodiscard]] double phase() const noexcept { return phase_; }

    [[nodiscard]] const Qubit& a() const noexcept { return a_; }
    [[nodiscard]] const Qubit& b() const noexcept { return b_; }
    [[nodiscard]] static Qubit zero() { return Qubit::basis(0); }
    [[nodiscard]] static Qubit one() { return Qubit::basis(1); }

    [[nodiscard]] const TwoQubit& phi0() const noexcept { return phi0_; }

    /// Phase-flip generator F (x) F.
    [[nodiscard]] const Operator<4>& generator() const noexcept { return s_; }

    /// Post-selection projector I - S|a,a><a,a|S.
    [[nodiscard]] const Operator<4>& post_selection() const noexcept { return pi_; }

    [[nodiscard]] const Operator<2>& local_f() const noexcept { return f_; }
    [[nodiscard]] const Operator<2>& local_w() const noexcept { return w_; }

    [[nodiscard]] const Operator<2>& local(LocalObservable o) const noexcept {
        return o == LocalObservable::F ? f_ : w_;
    }

    /// Joint observable of one of the four measurement contexts.
    [[nodiscard]] Operator<4> context(LocalObservable first, LocalObservable second) const {
        return tensor_op(local(first), local(second));
    }

    /// exp(-i theta S)|phi0>
    [[nodiscard]] TwoQubit state_at(double theta) const { return evolve(theta, s_, phi0_); }

private:
    double x_;
    double phase_;
    Qubit a_;
    Qubit b_;
    Operator<2> f_;
    Operator<2> w_;
    TwoQubit phi0_;
    Operator<4> s_;
    Operator<4> pi_;
};

[[nodiscard]] inline HardyScenario build_scenario(double x, double phase = 0.0) {
    return HardyScenario(x, phase);
}

struct ParadoxStats {
    double p_aa = 0.0;
    double p_a0 = 0.0;
    double p_0a = 0.0;
    double p_11 = 0.0;
    /// p_aa - (p_a0 + p_0a + p_11); positive means the noncontextual bound is violated.
    double violation = 0.0;
    /// <a,a|S|psi>/<a,a|psi>; empty when |<a,a|psi>|^2 is below the undefined threshold.
    std::optional<Complex> weak_value;
    double p_pi = 0.0;
    double exp_s = 0.0;
};

/// Overlap statistics of an arbitrary normalized two-qubit state against the
/// four Hardy outcomes. Throws PreconditionError if the state is not normalized.
[[nodiscard]] inline ParadoxStats inequality_check(const TwoQubit& state, const HardyScenario& s) {
    if (!state.is_normalized()) {
        throw PreconditionError("inequality_check: input state is not normalized");
    }
    const Qubit& a = s.a();
    const TwoQubit aa = tensor(a, a);

    ParadoxStats st;
    const Complex amp_aa = inner(aa, state);
    st.p_aa = std::norm(amp_aa);
    st.p_a0 = std::norm(inner(tensor(a, HardyScenario::zero()), state));
    st.p_0a = std::norm(inner(tensor(HardyScenario::zero(), a), state));
    st.p_11 = std::norm(inner(tensor(HardyScenario::one(), HardyScenario::one()), state));
    st.violation = st.p_aa - (st.p_a0 + st.p_0a + st.p_11);
    if (st.p_aa >= tol::weak_value_overlap) {
        st.weak_value = matrix_element(aa, s.generator(), state) / amp_aa;
    }
    st.p_pi = expectation(s.post_selection(), state);
    st.exp_s = expectation(s.generator(), state);
    return st;
}

/// Statistics of the scenario's own initial state.
[[nodiscard]] inline ParadoxStats paradox_stats(const HardyScenario& s) {
    return inequality_check(s.phi0(), s);
}

}  // namespace hardyqfi
