#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hardyqfi/hardy.hpp"
#include "hardyqfi/qfi.hpp"

using namespace hardyqfi;

namespace {

constexpr std::array<double, 5> kPhases{0.0, 0.7, std::numbers::pi / 2, 2.0, std::numbers::pi};

double grid_x(int i, int n) { return static_cast<double>(i) / static_cast<double>(n - 1); }

}  // namespace

TEST(BuildScenario, RejectsOutOfRangeX) {
    EXPECT_THROW(HardyScenario(-1e-9), DomainError);
    EXPECT_THROW(HardyScenario(1.0 + 1e-9), DomainError);
    EXPECT_THROW(HardyScenario(std::nan("")), DomainError);
    EXPECT_NO_THROW(HardyScenario(0.0));
    EXPECT_NO_THROW(HardyScenario(1.0));
}

TEST(BuildScenario, ZeroOverlapGivesMinusZeroZero) {
    const HardyScenario s = build_scenario(0.0, 0.0);
    EXPECT_NEAR(std::abs(s.a()[0]), 0.0, 1e-15);
    EXPECT_NEAR(s.a()[1].real(), 1.0, 1e-15);
    EXPECT_NEAR(s.phi0()[0].real(), -1.0, 1e-15);
    for (int i = 1; i < 4; ++i) EXPECT_NEAR(std::abs(s.phi0()[i]), 0.0, 1e-15);
}

TEST(BuildScenario, HalfGivesKnownAmplitudes) {
    const HardyScenario s(0.5);
    const double r = 1.0 / std::sqrt(3.0);
    const std::array<double, 4> want{-r, r, r, 0.0};
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(s.phi0()[i].real(), want[i], 1e-15);
        EXPECT_NEAR(s.phi0()[i].imag(), 0.0, 1e-15);
    }
}

TEST(BuildScenario, InvariantsOverGridAndPhases) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    const Qubit zero = HardyScenario::zero();
    const Qubit one = HardyScenario::one();
    for (int i = 0; i < 101; ++i) {
        const double x = grid_x(i, 101);
        for (int k = 0; k < 5; ++k) {
            const HardyScenario s(x, phase(rng));
            ASSERT_TRUE(s.a().is_normalized());
            ASSERT_TRUE(s.phi0().is_normalized());
            ASSERT_LE(std::abs(inner(s.a(), s.b())), 1e-12);
            ASSERT_LE(std::abs(inner(s.phi0(), tensor(s.a(), zero))), 1e-12);
            ASSERT_LE(std::abs(inner(s.phi0(), tensor(zero, s.a()))), 1e-12);
            ASSERT_LE(std::abs(inner(s.phi0(), tensor(one, one))), 1e-12);
            ASSERT_TRUE(s.post_selection().is_projector());
            ASSERT_NEAR(s.post_selection().trace().real(), 3.0, 1e-12);
            ASSERT_NEAR(s.post_selection().trace().imag(), 0.0, 1e-12);
            ASSERT_TRUE(s.local_w().is_hermitian());
            ASSERT_TRUE(s.local_w().is_involution());
        }
    }
}

TEST(BuildScenario, PhaseDoesNotChangeStatistics) {
    // Direct computation over a phase grid.
    const ParadoxStats ref = paradox_stats(HardyScenario(0.3, 0.0));
    const ParadoxStats st = paradox_stats(HardyScenario(0.3, 1.1));
    EXPECT_NEAR(st.p_aa, ref.p_aa, 1e-12);
    EXPECT_NEAR(st.p_pi, ref.p_pi, 1e-12);
    EXPECT_NEAR(st.exp_s, ref.exp_s, 1e-12);
    for (int k = 0; k < 64; ++k) {
        const ParadoxStats p = paradox_stats(HardyScenario(0.3, 2.0 * std::numbers::pi * k / 64.0));
        ASSERT_NEAR(p.p_aa, ref.p_aa, 1e-12);
        ASSERT_NEAR(p.exp_s, ref.exp_s, 1e-12);
    }
}

TEST(ParadoxStats, HalfValues) {
    const ParadoxStats st = paradox_stats(HardyScenario(0.5));
    EXPECT_NEAR(st.p_aa, 1.0 / 12.0, 1e-12);
    EXPECT_NEAR(st.p_pi, 0.25, 1e-12);
    EXPECT_NEAR(st.exp_s, -1.0 / 3.0, 1e-12);
    ASSERT_TRUE(st.weak_value.has_value());
    EXPECT_NEAR(st.weak_value->real(), -3.0, 1e-9);
    EXPECT_NEAR(st.weak_value->imag(), 0.0, 1e-9);
}

TEST(ParadoxStats, ZeroOverlapEndpoint) {
    const ParadoxStats st = paradox_stats(HardyScenario(0.0));
    EXPECT_NEAR(st.p_aa, 0.0, 1e-15);
    EXPECT_NEAR(st.p_pi, 1.0, 1e-15);
    EXPECT_NEAR(st.exp_s, 1.0, 1e-15);
    EXPECT_FALSE(st.weak_value.has_value());
}

TEST(ParadoxStats, OneEndpointWeakValueUndefined) {
    const ParadoxStats st = paradox_stats(HardyScenario(1.0));
    EXPECT_FALSE(st.weak_value.has_value());
    EXPECT_NEAR(st.exp_s, -1.0, 1e-15);
}

TEST(ParadoxStats, NearGoldenRatioValue) {
    EXPECT_NEAR(paradox_stats(HardyScenario(0.6180)).p_aa, 0.0902, 5e-5);
}

TEST(ParadoxStats, ClosedFormsAndIdentityOnGrid) {
    for (int i = 0; i < 101; ++i) {
        const double x = grid_x(i, 101);
        for (double ph : kPhases) {
            const ParadoxStats st = paradox_stats(HardyScenario(x, ph));
            ASSERT_NEAR(st.p_aa, x * x * (1.0 - x) / (1.0 + x), 1e-12) << x;
            ASSERT_NEAR(st.exp_s, (1.0 - 3.0 * x) / (1.0 + x), 1e-12) << x;
            ASSERT_NEAR(st.p_pi, 1.0 - 9.0 * st.p_aa, 1e-12) << x;
            ASSERT_LE(st.p_a0 + st.p_0a + st.p_11, 3e-24);
            for (double p : {st.p_aa, st.p_a0, st.p_0a, st.p_11, st.p_pi}) {
                ASSERT_GE(p, 0.0);
                ASSERT_LE(p, 1.0 + 1e-12);
            }
            if (x > 0.0 && x < 1.0) {
                ASSERT_GT(st.violation, 0.0) << x;
                ASSERT_TRUE(st.weak_value.has_value()) << x;
                ASSERT_NEAR(st.weak_value->real(), -3.0, 1e-9) << x;
                ASSERT_NEAR(st.weak_value->imag(), 0.0, 1e-9) << x;
            }
        }
    }
}

TEST(InequalityCheck, OneOneStateSatisfiesInequality) {
    const TwoQubit v11 = TwoQubit::basis(3);
    for (double x : {0.2, 0.5, 0.8}) {
        const ParadoxStats st = inequality_check(v11, HardyScenario(x));
        EXPECT_NEAR(st.p_11, 1.0, 1e-15);
        EXPECT_LT(st.violation, 0.0);
    }
}

TEST(InequalityCheck, InitialStateViolationAtHalf) {
    const HardyScenario s(0.5);
    EXPECT_NEAR(inequality_check(s.phi0(), s).violation, 1.0 / 12.0, 1e-12);
}

TEST(InequalityCheck, UniformSuperpositionAtHalf) {
    // Brute force: |a,a> = (1,1,1,1)/2, |a,0> = (1,0,1,0)/sqrt2, |0,a> = (1,1,0,0)/sqrt2.
    const TwoQubit u{0.5, 0.5, 0.5, 0.5};
    const HardyScenario s(0.5);
    const ParadoxStats st = inequality_check(u, s);
    const double r = 1.0 / std::sqrt(2.0);
    auto overlap2 = [&](std::array<double, 4> v) {
        double sum = 0.0;
        for (int i = 0; i < 4; ++i) sum += v[i] * 0.5;
        return sum * sum;
    };
    EXPECT_NEAR(st.p_aa, overlap2({0.5, 0.5, 0.5, 0.5}), 1e-12);
    EXPECT_NEAR(st.p_a0, overlap2({r, 0.0, r, 0.0}), 1e-12);
    EXPECT_NEAR(st.p_0a, overlap2({r, r, 0.0, 0.0}), 1e-12);
    EXPECT_NEAR(st.p_11, 0.25, 1e-12);
    EXPECT_NEAR(st.p_aa, 1.0, 1e-12);
    EXPECT_NEAR(st.violation, -0.25, 1e-12);
}

TEST(InequalityCheck, RejectsUnnormalizedState) {
    EXPECT_THROW((void)inequality_check(TwoQubit{1.0, 1.0, 0.0, 0.0}, HardyScenario(0.5)), PreconditionError);
}

TEST(Contexts, LocalObservablesHaveUnitSpectrum) {
    const HardyScenario s(0.42, 0.3);
    EXPECT_TRUE(s.local_f().is_involution());
    EXPECT_NEAR(s.local_f().trace().real(), 0.0, 1e-15);
    EXPECT_NEAR(s.local_w().trace().real(), 0.0, 1e-12);
    const auto fw = s.context(LocalObservable::F, LocalObservable::W);
    const auto wf = s.context(LocalObservable::W, LocalObservable::F);
    EXPECT_TRUE(fw.is_involution());
    EXPECT_TRUE(wf.is_involution());
    EXPECT_LE(s.context(LocalObservable::F, LocalObservable::F).max_abs_diff(s.generator()), 0.0);
}
