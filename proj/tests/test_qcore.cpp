#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hardyqfi/hardy.hpp"
#include "hardyqfi/qcore.hpp"

using namespace hardyqfi;

namespace {

template <std::size_t N>
void expect_ket_near(const Ket<N>& got, const Ket<N>& want, double tol = 1e-12) {
    for (std::size_t i = 0; i < N; ++i) {
        EXPECT_NEAR(got[i].real(), want[i].real(), tol) << "i=" << i << " (real)";
        EXPECT_NEAR(got[i].imag(), want[i].imag(), tol) << "i=" << i << " (imag)";
    }
}

template <std::size_t N>
Ket<N> random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Ket<N> v;
    for (std::size_t i = 0; i < N; ++i) v[i] = Complex(g(rng), g(rng));
    return v.normalized();
}

template <class A, class B>
concept InnerCompiles = requires(A a, B b) { inner(a, b); };

}  // namespace

// ---------- inner ----------
TEST(Inner, BasisNormalizationAndOrthogonality) {
    EXPECT_EQ(inner(Qubit::basis(0), Qubit::basis(0)), Complex(1.0, 0.0));
    EXPECT_EQ(inner(Qubit::basis(0), Qubit::basis(1)), Complex(0.0, 0.0));
}

TEST(Inner, DimensionMismatchDoesNotCompile) {
    static_assert(InnerCompiles<Qubit, Qubit>);
    static_assert(InnerCompiles<TwoQubit, TwoQubit>);
    static_assert(!InnerCompiles<Qubit, TwoQubit>);
}

TEST(Inner, ConjugateSymmetryOnRandomPairs) {
    std::mt19937_64 rng(20240611);
    for (int i = 0; i < 1000; ++i) {
        const auto u = random_state<4>(rng);
        const auto v = random_state<4>(rng);
        const Complex uv = inner(u, v);
        const Complex vu = inner(v, u);
        ASSERT_NEAR(uv.real(), vu.real(), 1e-14);
        ASSERT_NEAR(uv.imag(), -vu.imag(), 1e-14);
    }
}

TEST(Inner, InitialStateOrthogonalToAZero) {
    for (double x : {0.1, 0.37, 0.5, 0.92}) {
        const HardyScenario s(x);
        EXPECT_LT(std::abs(inner(s.phi0(), tensor(s.a(), Qubit::basis(0)))), 1e-12) << x;
    }
}

// ---------- tensor ----------
TEST(Tensor, BasisProduct) { expect_ket_near(tensor(Qubit::basis(0), Qubit::basis(1)), TwoQubit{0, 1, 0, 0}); }

TEST(Tensor, EqualSuperposition) {
    const HardyScenario s(0.5);
    expect_ket_near(tensor(s.a(), s.a()), TwoQubit{0.5, 0.5, 0.5, 0.5});
}

TEST(Tensor, AZeroAtPointThree) {
    const HardyScenario s(0.3);
    expect_ket_near(tensor(s.a(), Qubit::basis(0)), TwoQubit{std::sqrt(0.3), 0.0, std::sqrt(0.7), 0.0});
}

TEST(Tensor, BilinearInFirstFactor) {
    std::mt19937_64 rng(7);
    const Complex alpha(0.3, -1.7);
    for (int i = 0; i < 100; ++i) {
        const auto u = random_state<2>(rng);
        const auto v = random_state<2>(rng);
        expect_ket_near(tensor(alpha * u, v), alpha * tensor(u, v), 1e-14);
    }
}

TEST(Tensor, ProductOfNormalizedIsNormalized) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
        EXPECT_TRUE(tensor(random_state<2>(rng), random_state<2>(rng)).is_normalized());
    }
}

// ---------- tensor_op ----------
TEST(TensorOp, PhaseFlipIsDiagonal) {
    const HardyScenario s(0.4);
    const auto ff = tensor_op(s.local_f(), s.local_f());
    const auto want = Operator<4>::diagonal({1.0, -1.0, -1.0, 1.0});
    EXPECT_LE(ff.max_abs_diff(want), 0.0);
}

TEST(TensorOp, IdentityTensorIdentity) {
    EXPECT_LE(tensor_op(Operator<2>::identity(), Operator<2>::identity()).max_abs_diff(Operator<4>::identity()), 0.0);
}

TEST(TensorOp, WWHasAAEigenvectorAtHalf) {
    const HardyScenario s(0.5);
    // W|a> = -|a>, so (W (x) W)|a,a> = +|a,a>.
    expect_ket_near(apply(s.local_w(), s.a()), -s.a());
    const TwoQubit aa = tensor(s.a(), s.a());
    expect_ket_near(apply(tensor_op(s.local_w(), s.local_w()), aa), aa);
}

TEST(TensorOp, PreservesHermiticity) {
    const HardyScenario s(0.27, 1.3);
    for (auto o1 : {LocalObservable::F, LocalObservable::W})
        for (auto o2 : {LocalObservable::F, LocalObservable::W}) EXPECT_TRUE(s.context(o1, o2).is_hermitian());
}

// ---------- apply ----------
TEST(Apply, IdentityLeavesStateUnchanged) {
    const HardyScenario s(0.6);
    expect_ket_near(apply(Operator<4>::identity(), s.phi0()), s.phi0());
}

TEST(Apply, PhaseFlipEigenstate) {
    const HardyScenario s(0.6);
    const TwoQubit v01 = tensor(Qubit::basis(0), Qubit::basis(1));
    expect_ket_near(apply(s.generator(), v01), -v01);
}

TEST(Apply, PostSelectedNormAtHalf) {
    const HardyScenario s(0.5);
    EXPECT_NEAR(apply(s.post_selection(), s.phi0()).norm2(), 0.25, 1e-12);
}

// ---------- evolve ----------
TEST(Evolve, ZeroAngleIsIdentity) {
    const HardyScenario s(0.5);
    expect_ket_near(evolve(0.0, s.generator(), s.phi0()), s.phi0());
}

TEST(Evolve, PiGivesGlobalSignFlip) {
    const HardyScenario s(0.31, 0.4);
    expect_ket_near(evolve(std::numbers::pi, s.generator(), s.phi0()), -s.phi0());
}

TEST(Evolve, SurvivalProbabilityAtHalf) {
    // |<phi0|phi(t)>|^2 = cos^2 t + <S>^2 sin^2 t with <S> = -1/3.
    const HardyScenario s(0.5);
    const double t = 0.3;
    const double want = std::cos(t) * std::cos(t) + std::sin(t) * std::sin(t) / 9.0;
    EXPECT_NEAR(std::norm(inner(s.phi0(), evolve(t, s.generator(), s.phi0()))), want, 1e-12);
    EXPECT_NEAR(want, 0.922371, 1e-6);
}

TEST(Evolve, RejectsNonInvolutoryGenerator) {
    const auto g = Operator<4>::diagonal({1.0, 2.0, 1.0, 1.0});
    EXPECT_THROW((void)evolve(0.1, g, TwoQubit::basis(0)), PreconditionError);
}

TEST(Evolve, UnitaryOverGrid) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> theta(-10.0, 10.0);
    for (int i = 0; i <= 100; ++i) {
        const HardyScenario s(i / 100.0, 0.9);
        for (int k = 0; k < 10; ++k) {
            ASSERT_NEAR(evolve(theta(rng), s.generator(), s.phi0()).norm(), 1.0, 1e-12);
        }
    }
}

TEST(Evolve, GeneratorIsExactInvolution) {
    const HardyScenario s(0.77);
    EXPECT_LE((s.generator() * s.generator()).max_abs_diff(Operator<4>::identity()), 0.0);
}

// ---------- misc ----------
TEST(Ket, NormalizingZeroVectorThrows) { EXPECT_THROW((void)TwoQubit{}.normalized(), PreconditionError); }

TEST(Operator, ProjectorChecks) {
    const auto p = Operator<4>::projector(TwoQubit::basis(2));
    EXPECT_TRUE(p.is_projector());
    EXPECT_FALSE((p * Complex(2.0)).is_projector());
    EXPECT_NEAR(p.trace().real(), 1.0, 0.0);
}
