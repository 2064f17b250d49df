#pragma once

// Fixed-size complex linear algebra for one- and two-qubit pure states.
//
// Basis ordering is fixed: (|0>, |1>) for a qubit and
// (|0,0>, |0,1>, |1,0>, |1,1>) for a pair, so amp[2*i + j] = <i,j|psi>.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>

#include "hardyqfi/errors.hpp"
#include "hardyqfi/tolerance.hpp"

namespace hardyqfi {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

template <std::size_t N>
concept SupportedDim = (N == 2 || N == 4);

/// Amplitude list over the computational basis. Not necessarily normalized:
/// products such as `apply` return raw amplitudes and the caller decides.
template <std::size_t N>
    requires SupportedDim<N>
class Ket {
public:
    static constexpr std::size_t dim = N;

    constexpr Ket() = default;
    constexpr explicit Ket(const std::array<Complex, N>& amp) : amp_(amp) {}
    constexpr Ket(std::initializer_list<Complex> amp) {
        std::size_t i = 0;
        for (const auto& a : amp) {
            if (i < N) amp_[i] = a;
            ++i;
        }
    }

    static constexpr Ket basis(std::size_t index) {
        Ket k;
        k.amp_.at(index) = 1.0;
        return k;
    }

    constexpr Complex& operator[](std::size_t i) { return amp_[i]; }
    constexpr const Complex& operator[](std::size_t i) const { return amp_[i]; }

    [[nodiscard]] std::span<const Complex, N> amplitudes() const { return amp_; }

    [[nodiscard]] double norm2() const {
        double s = 0.0;
        for (const auto& a : amp_) s += std::norm(a);
        return s;
    }

    [[nodiscard]] double norm() const { return std::sqrt(norm2()); }

    [[nodiscard]] bool is_normalized(double tolerance = tol::structural) const {
        return std::abs(norm2() - 1.0) <= tolerance;
    }

    [[nodiscard]] bool is_finite() const {
        for (const auto& a : amp_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
        }
        return true;
    }

    /// Throws PreconditionError for the zero vector.
    [[nodiscard]] Ket normalized() const {
        const double n = norm();
        if (!(n > 0.0)) throw PreconditionError("cannot normalize a zero vector");
        return *this * Complex(1.0 / n);
    }

    Ket& operator+=(const Ket& o) {
        for (std::size_t i = 0; i < N; ++i) amp_[i] += o.amp_[i];
        return *this;
    }
    Ket& operator-=(const Ket& o) {
        for (std::size_t i = 0; i < N; ++i) amp_[i] -= o.amp_[i];
        return *this;
    }
    Ket& operator*=(Complex c) {
        for (auto& a : amp_) a *= c;
        return *this;
    }

    friend Ket operator+(Ket a, const Ket& b) { return a += b; }
    friend Ket operator-(Ket a, const Ket& b) { return a -= b; }
    friend Ket operator*(Ket a, Complex c) { return a *= c; }
    friend Ket operator*(Complex c, Ket a) { return a *= c; }
    friend Ket operator-(Ket a) { return a *= Complex(-1.0); }

private:
    std::array<Complex, N> amp_{};
};

using Qubit = Ket<2>;
using TwoQubit = Ket<4>;

/// Dense N x N complex matrix, row-major.
template <std::size_t N>
    requires SupportedDim<N>
class Operator {
public:
    static constexpr std::size_t dim = N;

    constexpr Operator() = default;

    static constexpr Operator identity() {
        Operator m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static constexpr Operator diagonal(const std::array<Complex, N>& d) {
        Operator m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    /// |u><v|
    static Operator outer(const Ket<N>& u, const Ket<N>& v) {
        Operator m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(r, c) = u[r] * std::conj(v[c]);
        return m;
    }

    /// |v><v|
    static Operator projector(const Ket<N>& v) { return outer(v, v); }

    constexpr Complex& operator()(std::size_t r, std::size_t c) { return m_[r * N + c]; }
    constexpr const Complex& operator()(std::size_t r, std::size_t c) const { return m_[r * N + c]; }

    [[nodiscard]] Operator adjoint() const {
        Operator a;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) a(r, c) = std::conj((*this)(c, r));
        return a;
    }

    [[nodiscard]] Complex trace() const {
        Complex t = 0.0;
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    /// Largest entrywise modulus of (this - other).
    [[nodiscard]] double max_abs_diff(const Operator& other) const {
        double d = 0.0;
        for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(m_[i] - other.m_[i]));
        return d;
    }

    [[nodiscard]] bool is_hermitian(double tolerance = tol::structural) const {
        return max_abs_diff(adjoint()) <= tolerance;
    }

    [[nodiscard]] bool is_projector(double tolerance = tol::structural) const {
        return is_hermitian(tolerance) && max_abs_diff(*this * *this) <= tolerance;
    }

    [[nodiscard]] bool is_involution(double tolerance = tol::structural) const {
        return (*this * *this).max_abs_diff(identity()) <= tolerance;
    }

    [[nodiscard]] bool is_finite() const {
        for (const auto& a : m_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
        }
        return true;
    }

    Operator& operator+=(const Operator& o) {
        for (std::size_t i = 0; i < N * N; ++i) m_[i] += o.m_[i];
        return *this;
    }
    Operator& operator-=(const Operator& o) {
        for (std::size_t i = 0; i < N * N; ++i) m_[i] -= o.m_[i];
        return *this;
    }
    Operator& operator*=(Complex c) {
        for (auto& a : m_) a *= c;
        return *this;
    }

    friend Operator operator+(Operator a, const Operator& b) { return a += b; }
    friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
    friend Operator operator*(Operator a, Complex c) { return a *= c; }
    friend Operator operator*(Complex c, Operator a) { return a *= c; }

    friend Operator operator*(const Operator& a, const Operator& b) {
        Operator p;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t k = 0; k < N; ++k) {
                const Complex ark = a(r, k);
                for (std::size_t c = 0; c < N; ++c) p(r, c) += ark * b(k, c);
            }
        return p;
    }

    friend Ket<N> operator*(const Operator& a, const Ket<N>& v) {
        Ket<N> out;
        for (std::size_t r = 0; r < N; ++r) {
            Complex s = 0.0;
            for (std::size_t c = 0; c < N; ++c) s += a(r, c) * v[c];
            out[r] = s;
        }
        return out;
    }

private:
    std::array<Complex, N * N> m_{};
};

/// <u|v>. Mismatched dimensions do not compile.
template <std::size_t N>
[[nodiscard]] Complex inner(const Ket<N>& u, const Ket<N>& v) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += std::conj(u[i]) * v[i];
    return s;
}

/// Kronecker product |u> (x) |v>, amp[2i+j] = u_i v_j. Bilinear, so the result
/// is normalized whenever both factors are.
[[nodiscard]] inline TwoQubit tensor(const Qubit& u, const Qubit& v) {
    TwoQubit out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) out[2 * i + j] = u[i] * v[j];
    return out;
}

[[nodiscard]] inline Operator<4> tensor_op(const Operator<2>& a, const Operator<2>& b) {
    Operator<4> out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

/// Matrix-vector product, no renormalization.
template <std::size_t N>
[[nodiscard]] Ket<N> apply(const Operator<N>& a, const Ket<N>& v) {
    return a * v;
}

/// <u|A|v>
template <std::size_t N>
[[nodiscard]] Complex matrix_element(const Ket<N>& u, const Operator<N>& a, const Ket<N>& v) {
    return inner(u, a * v);
}

/// <v|A|v>, real part only; meaningful for Hermitian A and normalized v.
template <std::size_t N>
[[nodiscard]] double expectation(const Operator<N>& a, const Ket<N>& v) {
    return matrix_element(v, a, v).real();
}

/// exp(-i theta S)|v> for an involutory generator, via cos(theta) I - i sin(theta) S.
/// Throws PreconditionError unless S^2 = I within the structural tolerance.
template <std::size_t N>
[[nodiscard]] Ket<N> evolve(double theta, const Operator<N>& generator, const Ket<N>& v) {
    if (!generator.is_involution()) {
        throw PreconditionError("evolve: generator is not an involution (S^2 != I)");
    }
    return Complex(std::cos(theta)) * v - kI * std::sin(theta) * (generator * v);
}

}  // namespace hardyqfi
