#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fockcs/conjugation.hpp"
#include "fockcs/rng.hpp"

using namespace fockcs;

namespace {

// Random admissible (a, b, c): |a| = 1, b = i sqrt(a) s for real s (then
// conj(a) b = -conj(b)), |c| = exp(-|b|^2/2).
ConjugationParams random_params(SplitMix64& rng, bool zero_b) {
    const Complex a = std::polar(1.0, rng.uniform(-std::numbers::pi, std::numbers::pi));
    const Complex b = zero_b ? Complex{} : kI * std::sqrt(a) * rng.uniform(-1.0, 1.0);
    const Complex c = std::polar(std::exp(-std::norm(b) / 2), rng.uniform(-3.0, 3.0));
    return {a, b, c};
}

}  // namespace

TEST(ConjugationParams, NamesTheViolatedConstraint) {
    try {
        ConjugationParams{2.0, 0.0, 1.0}.validate();
        FAIL();
    } catch (const ConstraintError& e) {
        EXPECT_EQ(e.constraint(), "|a| = 1");
    }
    try {
        ConjugationParams{1.0, 1.0, std::exp(-0.5)}.validate();
        FAIL();
    } catch (const ConstraintError& e) {
        EXPECT_EQ(e.constraint(), "conj(a) b + conj(b) = 0");
    }
    try {
        ConjugationParams{1.0, kI, 1.0}.validate();
        FAIL();
    } catch (const ConstraintError& e) {
        EXPECT_EQ(e.constraint(), "|c|^2 exp(|b|^2) = 1");
    }
    EXPECT_NO_THROW((ConjugationParams{1.0, kI, std::exp(-0.5)}.validate()));
}

TEST(ConjugationMatrix, UnshiftedIsDiagonal) {
    // C e_k = c conj(e_k(conj(a z))) = c a^k e_k
    const Complex a = std::polar(1.0, 0.9), c = std::polar(1.0, -0.4);
    const auto op = conjugation_matrix({a, 0.0, c}, 30);
    Matrix expect = Matrix::Zero(30, 30);
    for (int k = 0; k < 30; ++k) expect(k, k) = c * std::pow(a, k);
    EXPECT_LE(max_abs(op.M - expect), 1e-14);
}

TEST(ConjugationMatrix, PointwiseDefinition) {
    // (Cf)(z) = c e^{bz} conj(f(conj(a z + b)))
    const ConjugationParams p{std::polar(1.0, 0.3), kI * std::polar(1.0, 0.15) * 0.7,
                              std::polar(std::exp(-0.49 / 2), 1.1)};
    ASSERT_NO_THROW(p.validate());
    std::vector<Complex> poly(60, 0.0);
    poly[0] = 1.0;
    poly[1] = Complex(0.5, -0.5);
    poly[3] = 0.2;
    const FockVector f(poly, Basis::monomial);
    const FockVector g = apply_conjugation(conjugation_matrix(p, 60), f);
    for (Complex z : {Complex(0.0), Complex(0.4, 0.1), Complex(-0.3, 0.8)}) {
        const Complex expect = p.c * std::exp(p.b * z) * std::conj(evaluate(f, std::conj(p.a * z + p.b)));
        EXPECT_NEAR(std::abs(evaluate(g, z) - expect), 0.0, 1e-11);
    }
}

TEST(ConjugationProperties, UnshiftedIsExactInvolutionAndIsometry) {
    SplitMix64 rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        const auto p = random_params(rng, true);
        const auto op = conjugation_matrix(p, 32);
        for (double r : check_involution(op, 31)) EXPECT_LE(r, 1e-13);
        const FockVector f(random_complex_vector(rng, 32)), g(random_complex_vector(rng, 32));
        EXPECT_LE(std::abs(check_isometry(op, f, g)), 1e-12 * norm(f) * norm(g));
    }
}

TEST(ConjugationProperties, ShiftedDefectDecreasesWithTruncation) {
    SplitMix64 rng(22);
    for (int trial = 0; trial < 8; ++trial) {
        const auto p = random_params(rng, false);
        double prev = INFINITY;
        for (int N : {16, 24, 32, 48, 64}) {
            const auto r = check_involution(conjugation_matrix(p, N), 6);
            const double worst = *std::max_element(r.begin(), r.end());
            EXPECT_LE(worst, std::max(prev, 1e-15)) << "N=" << N;
            prev = worst;
        }
        EXPECT_LE(prev, 1e-12);
    }
}

TEST(ConjugationProperties, Antilinear) {
    SplitMix64 rng(23);
    const auto op = conjugation_matrix(random_params(rng, false), 24);
    const FockVector f(random_complex_vector(rng, 24)), g(random_complex_vector(rng, 24));
    const Complex alpha(0.7, -1.3);
    const Vector lhs = apply_conjugation(op, f.scaled(alpha).plus(g)).as_normalized();
    const Vector rhs = std::conj(alpha) * apply_conjugation(op, f).as_normalized() +
                       apply_conjugation(op, g).as_normalized();
    EXPECT_LE((lhs - rhs).norm(), 1e-13);
}

TEST(ConjugationProperties, MatrixIsSymmetric) {
    SplitMix64 rng(24);
    for (int trial = 0; trial < 10; ++trial) {
        const auto op = conjugation_matrix(random_params(rng, trial % 2 == 0), 40);
        EXPECT_LE(max_abs(op.M - op.M.transpose()), 1e-13);
    }
}

TEST(CAdjoint, OfCSymmetricMatrixIsItself) {
    // T M = M T^T  <=>  M T^T conj(M) = T when M conj(M) = I
    const auto op = conjugation_matrix({kI, 0.0, 1.0}, 6);
    Matrix T = Matrix::Random(6, 6);
    T = 0.5 * (T + c_adjoint(T, op));
    EXPECT_LE(check_matrix_c_symmetry(T, op), 1e-14);
    EXPECT_LE(max_abs(c_adjoint(T, op) - T), 1e-14);
}

TEST(Involution, RejectsDegreeOutsideTruncation) {
    EXPECT_THROW(check_involution(conjugation_matrix({1.0, 0.0, 1.0}, 8), 8), InputError);
}
