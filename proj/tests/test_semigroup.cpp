#include <cmath>

#include <gtest/gtest.h>

#include "fockcs/generator.hpp"
#include "fockcs/rng.hpp"
#include "fockcs/semigroup.hpp"

using namespace fockcs;

namespace {

const ConjugationParams kPlain{1.0, 0.0, 1.0};
const ConjugationParams kShifted{1.0, kI, std::exp(-0.5)};

std::vector<SemigroupFamily> sample_families() {
    return {
        SemigroupFamily(Translation{1.0, 0.0}, kPlain),
        SemigroupFamily(Translation{Complex(0.5, -1.0), Complex(0.2, 0.1)}, kShifted),
        SemigroupFamily(Dilation{1.0, 1.0, 0.0}, kPlain),
        SemigroupFamily(Dilation{Complex(-0.3, 1.0), Complex(0.4, 0.4), -0.5}, kShifted),
        SemigroupFamily(Dilation{-2.0, -kI, 0.1}, ConjugationParams{-1.0, 0.0, kI}),
    };
}

}  // namespace

TEST(Family, RejectsDegenerateParameters) {
    EXPECT_THROW(SemigroupFamily(Translation{0.0, 1.0}, kPlain), ConstraintError);
    EXPECT_THROW(SemigroupFamily(Dilation{0.0, 1.0, 1.0}, kPlain), ConstraintError);
    EXPECT_THROW(SemigroupFamily(Translation{1.0, 0.0}, ConjugationParams{1.0, 1.0, 1.0}), ConstraintError);
}

TEST(Family, TranslationClosedForm) {
    // E=1, F=0, a=1, t=2: (A, B, C, D) = (1, 2, e^2, 2)
    const auto p = family_eval(SemigroupFamily(Translation{1.0, 0.0}, kPlain), 2.0);
    EXPECT_EQ(p.A, Complex(1.0));
    EXPECT_NEAR(std::abs(p.B - 2.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p.C - std::exp(2.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(p.D - 2.0), 0.0, 1e-15);
}

TEST(Family, DilationClosedForm) {
    const double l = 0.7, G = 1.3, H = -0.2;
    const ConjugationParams q{-1.0, 0.0, 1.0};
    const SemigroupFamily fam(Dilation{l, G, H}, q);
    const double beta = -G;  // aG + b
    EXPECT_NEAR(std::abs(fam.beta() - beta), 0.0, 0.0);
    const double t = 0.9, e = std::exp(l * t);
    const auto p = family_eval(fam, t);
    EXPECT_NEAR(std::abs(p.A - e), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(p.B - G * (1 - e)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(p.C - std::exp(H * t + G * beta * (e - l * t - 1))), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(p.D - beta * (1 - e)), 0.0, 1e-14);
}

TEST(Family, NegativeTimeOnlyThroughFlow) {
    const SemigroupFamily fam(Translation{1.0, 0.0}, kPlain);
    EXPECT_THROW(family_eval(fam, -0.1), InputError);
    const auto back = family_eval_flow(fam, -0.5);
    const auto fwd = family_eval(fam, 0.5);
    // W(-t) W(t) = I: compose symbols
    const auto id = compose(back, fwd);
    EXPECT_NEAR(std::abs(id.A - 1.0) + std::abs(id.B) + std::abs(id.C - 1.0) + std::abs(id.D), 0.0, 1e-14);
}

TEST(FamilyProperties, SymbolConditionHoldsOnGrid) {
    for (const auto& fam : sample_families())
        for (double t = 0.0; t <= 3.0; t += 0.25)
            EXPECT_LE(std::abs(is_c_selfadjoint_symbols(family_eval(fam, t), fam.conjugation()).mismatch), 1e-12);
}

TEST(FamilyProperties, SemiflowAndSemicocycleLaws) {
    const Complex z[] = {0.0, 1.0, -1.0, kI, -kI, Complex(2.0, 1.0)};
    for (const auto& fam : sample_families())
        for (double t = 0.0; t <= 1.0; t += 0.2)
            for (double s = 0.0; s <= 1.0; s += 0.2) {
                EXPECT_LE(check_semiflow(fam, t, s, z), 1e-10);
                EXPECT_LE(check_semicocycle(fam, t, s, z), 1e-10);
            }
}

TEST(FamilyProperties, SymbolCompositionIsSemigroupLaw) {
    // W(t) W(s) has symbols compose(W(t), W(s)); must equal W(t+s) exactly
    for (const auto& fam : sample_families())
        for (double t : {0.1, 0.6})
            for (double s : {0.2, 0.9}) {
                const auto c = compose(family_eval(fam, t), family_eval(fam, s));
                const auto d = family_eval(fam, t + s);
                EXPECT_NEAR(std::abs(c.A - d.A) + std::abs(c.B - d.B) + std::abs(c.D - d.D), 0.0, 1e-12);
                EXPECT_NEAR(std::abs(c.C / d.C - 1.0), 0.0, 1e-12);
            }
}

TEST(SemigroupLaw, DilationExampleWithinTolerance) {
    const SemigroupFamily fam(Dilation{1.0, 1.0, 0.0}, kPlain);
    for (double t : {0.25, 0.5})
        for (double s : {0.25, 0.5})
            for (int k = 0; k <= 4; ++k) EXPECT_LE(check_semigroup_law(fam, t, s, k, 64), 1e-8);
}

TEST(ScalingEquation, ReproducesBothClosedForms) {
    for (const auto& fam : sample_families()) {
        const auto dpsi = scaling_equation_dpsi(fam);
        const Complex l0 = scaling_equation_lambda0(fam);
        for (double t = 0.0; t <= 2.0; t += 0.125) {
            const Complex c = family_eval(fam, t).C;
            EXPECT_LE(std::abs(solve_scaling_equation(l0, dpsi, t) / c - 1.0), 1e-10) << t;
        }
    }
}

TEST(ScalingEquation, GeneralCallback) {
    // dpsi = cos: Lambda(t) = exp(2t + sin t)
    const Complex v = solve_scaling_equation(2.0, [](double t) { return Complex(std::cos(t)); }, 1.7);
    EXPECT_NEAR(std::abs(v - std::exp(2 * 1.7 + std::sin(1.7))), 0.0, 1e-10 * std::abs(v));
}

TEST(Growth, StandardProbeGrid) {
    const auto p = GrowthProbe::standard(1.0);
    ASSERT_EQ(p.t_grid.size(), 65u);
    EXPECT_EQ(p.t_grid.front(), 0.0);
    EXPECT_DOUBLE_EQ(p.t_grid[1], 0.125);
    EXPECT_EQ(p.t_grid.back(), 8.0);
    EXPECT_NO_THROW(p.validate());
    GrowthProbe bad{0.0, {0.1, 0.2}};
    EXPECT_THROW(bad.validate(), InputError);
}

TEST(Growth, NormOfWOneMatchesClosedForm) {
    for (const auto& fam : sample_families())
        for (double t = 0.0; t <= 1.0; t += 0.1) {
            const double measured = norm(apply_wco(family_eval(fam, t), FockVector::basis_vector(0, 64)));
            EXPECT_NEAR(measured / norm_W_one_closed_form(fam, t), 1.0, 1e-8);
        }
    // E=1, a=1, F=0: ||W(t) 1|| = e^{t^2}
    const SemigroupFamily fam(Translation{1.0, 0.0}, kPlain);
    for (double t : {0.5, 1.0, 1.5}) EXPECT_NEAR(norm_W_one_closed_form(fam, t), std::exp(t * t), 1e-12 * std::exp(t * t));
}

TEST(Growth, DetectsSuperExponentialGrowth) {
    const SemigroupFamily fam(Translation{1.0, 0.0}, kPlain);
    for (double omega : {0.0, 1.0, 10.0})
        EXPECT_TRUE(n_omega_estimate(fam, FockVector::basis_vector(0, 64), GrowthProbe::standard(omega)).diverging);
}

TEST(Growth, BoundedFamilyHasFiniteEstimate) {
    // conj(E) + aE = 0 with F = -1: ||W(t) 1|| = e^{-t}
    const SemigroupFamily fam(Translation{kI, -1.0}, kPlain);
    ASSERT_TRUE(family_is_bounded(fam));
    const auto est = n_omega_estimate(fam, FockVector::basis_vector(0, 64), GrowthProbe::standard(0.0));
    EXPECT_FALSE(est.diverging);
    EXPECT_NEAR(est.sup, 1.0, 1e-12);
    EXPECT_EQ(est.argmax_t, 0.0);
}

TEST(Boundedness, FamilyCriterion) {
    EXPECT_FALSE(family_is_bounded(SemigroupFamily(Translation{1.0, 0.0}, kPlain)));
    EXPECT_TRUE(family_is_bounded(SemigroupFamily(Translation{kI, 0.0}, kPlain)));
    EXPECT_TRUE(family_is_bounded(SemigroupFamily(Dilation{-1.0, 5.0, 0.0}, kPlain)));
    EXPECT_FALSE(family_is_bounded(SemigroupFamily(Dilation{1.0, 1.0, 0.0}, kPlain)));
    // Re l = 0: bounded iff aG + b = conj(G)
    EXPECT_TRUE(family_is_bounded(SemigroupFamily(Dilation{kI, 2.0, 0.0}, kPlain)));
    EXPECT_FALSE(family_is_bounded(SemigroupFamily(Dilation{kI, kI, 0.0}, kPlain)));
}

TEST(Resolvent, DiagonalDilationClosedForm) {
    const SemigroupFamily fam(Dilation{-1.0, 0.0, 0.0}, kPlain);
    for (int k = 0; k <= 4; ++k) {
        const Vector J = laplace_resolvent(fam, 1.0, FockVector::basis_vector(k, 32), 0.0).as_normalized();
        Vector expect = Vector::Zero(32);
        expect(k) = 1.0 / (1.0 + k);
        EXPECT_LE((J - expect).norm(), 1e-8) << k;
    }
}

TEST(Resolvent, InvertsLambdaMinusGenerator) {
    const SemigroupFamily fam(Translation{kI, -2.0}, kPlain);
    const Matrix Q = generator_matrix(fam, 64).dense();
    for (int k = 0; k <= 4; ++k) {
        const Vector J = laplace_resolvent(fam, 1.0, FockVector::basis_vector(k, 64), -1.0).as_normalized();
        Vector r = J - Q * J;
        r(k) -= 1.0;
        EXPECT_LE(r.norm(), 1e-6) << k;
    }
}

TEST(Resolvent, RequiresLambdaRightOfGrowthBound) {
    const SemigroupFamily fam(Dilation{-1.0, 0.0, 0.0}, kPlain);
    EXPECT_THROW(laplace_resolvent(fam, 0.5, FockVector::basis_vector(0, 16), 1.0), NumericalError);
    const SemigroupFamily wild(Translation{1.0, 0.0}, kPlain);
    EXPECT_THROW(laplace_resolvent(wild, 20.0, FockVector::basis_vector(0, 64), 10.0), NumericalError);
}
