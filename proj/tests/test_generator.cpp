#include <cmath>

#include <gtest/gtest.h>

#include "fockcs/generator.hpp"
#include "fockcs/rng.hpp"

using namespace fockcs;

namespace {

const ConjugationParams kPlain{1.0, 0.0, 1.0};
const ConjugationParams kShifted{1.0, kI, std::exp(-0.5)};

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Taylor series with scaling and squaring in long double arithmetic.
Matrix taylor_exp(const Matrix& m) {
    using CL = std::complex<long double>;
    const int n = static_cast<int>(m.rows());
    int squarings = 0;
    double nrm = m.cwiseAbs().rowwise().sum().maxCoeff();
    while (nrm > 0.25) nrm /= 2, ++squarings;
    const long double scale = std::ldexp(1.0L, -squarings);
    std::vector<CL> a(n * n), term(n * n), sum(n * n), tmp(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            a[i * n + j] = CL(m(i, j).real(), m(i, j).imag()) * scale;
            term[i * n + j] = sum[i * n + j] = i == j ? 1.0L : 0.0L;
        }
    auto mul = [n](const std::vector<CL>& x, const std::vector<CL>& y, std::vector<CL>& out) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CL acc = 0;
                for (int k = 0; k < n; ++k) acc += x[i * n + k] * y[k * n + j];
                out[i * n + j] = acc;
            }
    };
    for (int k = 1; k <= 30; ++k) {
        mul(term, a, tmp);
        for (auto& v : tmp) v /= static_cast<long double>(k);
        term = tmp;
        for (int i = 0; i < n * n; ++i) sum[i] += term[i];
    }
    for (int s = 0; s < squarings; ++s) {
        mul(sum, sum, tmp);
        sum = tmp;
    }
    Matrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out(i, j) = Complex(static_cast<double>(sum[i * n + j].real()), static_cast<double>(sum[i * n + j].imag()));
    return out;
}

}  // namespace

TEST(GeneratorMatrix, EqualsDerivativeOfSymbols) {
    // Richardson-extrapolated central difference of W(t) at t = 0
    const SemigroupFamily fams[] = {
        SemigroupFamily(Translation{Complex(0.5, 1.0), Complex(-0.3, 0.2)}, kShifted),
        SemigroupFamily(Dilation{Complex(0.7, -0.4), Complex(0.2, 0.5), 0.3}, kShifted),
    };
    for (const auto& fam : fams) {
        const int N = 40;
        const Matrix Q = generator_matrix(fam, N).dense();
        auto central = [&](double h) {
            return Matrix((wco_matrix(family_eval_flow(fam, h), N) - wco_matrix(family_eval_flow(fam, -h), N)) /
                          (2 * h));
        };
        const double h = 2e-3;
        const Matrix d = (4.0 * central(h / 2) - central(h)) / 3.0;
        EXPECT_LE(max_abs((d - Q).topLeftCorner(10, 8)), 1e-7);
    }
}

TEST(GeneratorMatrix, TridiagonalLayoutAndApply) {
    const SemigroupFamily fam(Translation{2.0, 0.5}, kPlain);
    const auto g = generator_matrix(fam, 6);
    EXPECT_EQ(g.dim(), 6);
    EXPECT_EQ(g.sub.size(), 5u);
    // translation: diag F, sub aE sqrt(k+1), super E sqrt(k+1)
    for (int k = 0; k < 5; ++k) {
        EXPECT_NEAR(std::abs(g.sub[k] - 2.0 * std::sqrt(k + 1.0)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(g.super[k] - 2.0 * std::sqrt(k + 1.0)), 0.0, 1e-15);
    }
    Vector v = Vector::LinSpaced(6, 1.0, 6.0);
    EXPECT_LE((g.apply(v) - g.dense() * v).norm(), 1e-13);
}

TEST(FiniteDifference, SlopesForTranslationExample) {
    const SemigroupFamily fam(Translation{1.0, 0.0}, kPlain);
    const auto steps = default_fd_steps();
    ASSERT_EQ(steps.size(), 5u);
    for (int k = 0; k <= 4; ++k) {
        const auto fwd = check_generator_fd(fam, k, 64, steps);
        const auto cen = check_generator_fd(fam, k, 64, steps, DifferenceScheme::central);
        EXPECT_GE(fwd.slope, 0.9);
        EXPECT_LE(fwd.slope, 1.1);
        EXPECT_GE(cen.slope, 1.9);
        EXPECT_LE(cen.slope, 2.1);
    }
}

TEST(FiniteDifference, ExtendedStepRange) {
    const SemigroupFamily fam(Translation{1.0, 0.0}, kPlain);
    const double steps[] = {1e-2, 1e-3, 1e-4, 1e-5};
    for (int k = 0; k <= 4; ++k) {
        const double slope = check_generator_fd(fam, k, 64, steps).slope;
        EXPECT_GE(slope, 0.9);
        EXPECT_LE(slope, 1.1);
    }
}

TEST(LogLogSlope, ExactPowerLaw) {
    const double x[] = {1, 2, 4, 8};
    const double y[] = {3, 12, 48, 192};
    EXPECT_NEAR(loglog_slope(x, y), 2.0, 1e-14);
}

TEST(PointSpectrum, LatticeExample) {
    // l=1, G=1, H=0, a=1, b=0: H - l beta G + k l = k - 1
    const SemigroupFamily fam(Dilation{1.0, 1.0, 0.0}, kPlain);
    const auto p = point_spectrum_predicted(fam, 4);
    for (int k = 0; k <= 4; ++k) EXPECT_NEAR(std::abs(p[k] - Complex(k - 1.0)), 0.0, 1e-15);
    EXPECT_THROW(point_spectrum_predicted(SemigroupFamily(Translation{1.0, 0.0}, kPlain), 3), InputError);
}

TEST(PointSpectrum, EigenfunctionCoefficientsOracle) {
    // (z - G)^m e^{beta z} by polynomial multiplication
    const Complex G(0.4, -0.3), beta(0.8, 0.1);
    const int N = 30;
    std::vector<Complex> exp_series(N);
    for (int n = 0; n < N; ++n) exp_series[n] = std::pow(beta, n) / factorial(n);
    std::vector<Complex> poly{1.0};
    for (int m = 0; m <= 5; ++m) {
        if (m > 0) {
            std::vector<Complex> next(poly.size() + 1, 0.0);
            for (std::size_t j = 0; j < poly.size(); ++j) {
                next[j] -= G * poly[j];
                next[j + 1] += poly[j];
            }
            poly = next;
        }
        const FockVector f = eigenfunction_coeffs(m, G, beta, N).to_monomial();
        for (int n = 0; n < N; ++n) {
            Complex expect = 0.0;
            for (int j = 0; j <= std::min<int>(n, static_cast<int>(poly.size()) - 1); ++j)
                expect += poly[j] * exp_series[n - j];
            EXPECT_NEAR(std::abs(f[n] - expect), 0.0, 1e-13 * (1 + std::abs(expect))) << m << "," << n;
        }
    }
}

TEST(PointSpectrum, ResidualsSmallAndNonIncreasing) {
    const SemigroupFamily fam(Dilation{1.0, 1.0, 0.0}, kPlain);
    for (int m = 0; m <= 5; ++m) {
        const double r40 = eigen_residual(fam, m, 40), r60 = eigen_residual(fam, m, 60), r80 = eigen_residual(fam, m, 80);
        EXPECT_LE(r80, 1e-10);
        EXPECT_LE(r60, std::max(r40, 1e-15));
        EXPECT_LE(r80, std::max(r60, 1e-15));
    }
}

TEST(PointSpectrum, BetaZeroTruncationCarriesLattice) {
    const SemigroupFamily fam(Dilation{1.0, -kI, 0.0}, kShifted);
    ASSERT_EQ(fam.beta(), Complex(0.0));
    const auto rep = spectrum_report(fam, 15, 16);
    for (int k = 0; k < 16; ++k) EXPECT_NEAR(std::abs(rep.truncated_eigs[k] - Complex(k)), 0.0, 1e-12);
}

TEST(EmptySpectrum, CandidateSeriesOracle) {
    const Complex alpha(1.0, 1.0), gamma(-0.5);
    const int dims[] = {8, 16};
    const auto cert = candidate_partial_norms(alpha, gamma, 1.0, dims);
    // direct recursion on monomial coefficients
    std::vector<Complex> f{1.0, alpha};
    for (int k = 1; k < 40; ++k) f.push_back((alpha * f[k] + 2.0 * gamma * f[k - 1]) / double(k + 1));
    auto S = [&](int n) {
        double s = 0;
        for (int k = 0; k < n; ++k) s += std::norm(f[k]) * factorial(k);
        return s;
    };
    EXPECT_NEAR(cert.partial_norms[0], S(8), 1e-12 * S(8));
    EXPECT_NEAR(cert.doubled[1], S(32), 1e-10 * S(32));
    EXPECT_NEAR(cert.ratios[0], S(16) / S(8), 1e-10);
    EXPECT_THROW(candidate_partial_norms(alpha, 0.0, 1.0, dims), InputError);
}

TEST(EmptySpectrum, CertificateForShiftedEigenvalue) {
    const SemigroupFamily fam(Translation{1.0, 0.0}, kPlain);
    const int dims[] = {16, 32, 64};
    EXPECT_TRUE(check_empty_point_spectrum(fam, Complex(1.0, 1.0), dims).certified);
}

TEST(EmptySpectrum, GaussianCandidateGrowsOnlyLikeSqrtN) {
    // eta = 0 gives exp(-z^2/2), whose partial Fock norms grow like sqrt(N):
    // the ratio tends to sqrt(2), so the factor-10 heuristic cannot certify it.
    const SemigroupFamily fam(Translation{1.0, 0.0}, kPlain);
    const int dims[] = {16, 32, 64};
    const auto cert = check_empty_point_spectrum(fam, 0.0, dims);
    EXPECT_FALSE(cert.certified);
    for (double r : cert.ratios) EXPECT_NEAR(r, std::sqrt(2.0), 0.02);
}

TEST(Dissipativity, MarginAndResolventBound) {
    const int N = 20;
    Matrix Q = -Matrix::Identity(N, N);
    for (int k = 0; k + 1 < N; ++k) Q(k + 1, k) = Q(k, k + 1) = kI * std::sqrt(k + 1.0);
    EXPECT_NEAR(dissipativity_margin(Q), -1.0, 1e-12);
    SplitMix64 rng(31);
    std::vector<Vector> samples;
    for (int i = 0; i < 50; ++i) samples.push_back(random_complex_vector(rng, N));
    const double alphas[] = {0.1, 1.0, 10.0};
    EXPECT_GE(resolvent_bound_check(Q, alphas, samples), 1.0 - 1e-10);

    // a non-dissipative matrix violates the bound for some sample
    const Matrix P = Matrix::Identity(N, N);
    EXPECT_NEAR(dissipativity_margin(P), 1.0, 1e-14);
    EXPECT_LT(resolvent_bound_check(P, alphas, samples), 1.0);
}

TEST(MatrixExponential, MatchesTaylorOracle) {
    SplitMix64 rng(32);
    for (double scale : {0.01, 0.5, 3.0, 12.0}) {
        Matrix m(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) m(i, j) = scale * Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) / 6.0;
        const Matrix e = matrix_exponential(m);
        const Matrix ref = taylor_exp(m);
        EXPECT_LE(max_abs(e - ref), 1e-12 * std::max(1.0, max_abs(ref))) << scale;
    }
}

TEST(MatrixExponential, HermitianViaEigendecomposition) {
    SplitMix64 rng(33);
    Matrix h(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) h(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const double t = 0.7;
    const Matrix ref = es.eigenvectors() *
                       (kI * t * es.eigenvalues().cast<Complex>()).array().exp().matrix().asDiagonal() *
                       es.eigenvectors().adjoint();
    EXPECT_LE(max_abs(matrix_exponential(kI * h, t) - ref), 1e-13);
}

TEST(MatrixExponential, GroupPropertyAndLimits) {
    const SemigroupFamily fam(Dilation{-1.0, 1.0, 0.2}, kPlain);
    const Matrix Q = generator_matrix(fam, 16).dense();
    EXPECT_LE(max_abs(matrix_exponential(Q, 0.0) - Matrix::Identity(16, 16)), 0.0);
    EXPECT_LE(max_abs(matrix_exponential(Q, 0.3) * matrix_exponential(Q, -0.3) - Matrix::Identity(16, 16)), 1e-11);
    EXPECT_THROW(matrix_exponential(Matrix::Identity(3, 3), 1e6), NumericalError);
}

TEST(MatrixExponential, AgreesWithSemigroupOnLowDegrees) {
    const SemigroupFamily fam(Translation{1.0, 0.0}, kPlain);
    const Matrix Q = generator_matrix(fam, 64).dense();
    for (double t : {0.1, 0.25, 0.5}) {
        const Matrix E = matrix_exponential(Q, t), W = semigroup_matrix(fam, t, 64);
        for (int k = 0; k <= 5; ++k) EXPECT_LE((E.col(k) - W.col(k)).head(20).norm(), 1e-6);
    }
}

TEST(StoneRelation, AdjointGeneratorAndCSymmetry) {
    const SemigroupFamily fam(Dilation{Complex(0.5, 2.0), Complex(1.0, -1.0), kI},
                              ConjugationParams{-1.0, 0.0, std::polar(1.0, 0.3)});
    const auto r = check_stone_adjoint_relation(fam, fam.conjugation(), 48);
    EXPECT_LE(r.c_symmetry, 1e-12);
    EXPECT_LE(r.adjoint_generator, 1e-4);
}
