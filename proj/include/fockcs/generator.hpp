#pragma once

#include <span>
#include <vector>

#include "fockcs/conjugation.hpp"
#include "fockcs/core.hpp"
#include "fockcs/fock.hpp"
#include "fockcs/semigroup.hpp"

namespace fockcs {

enum class GeneratorKind { translation, dilation };

/// Tridiagonal generator in the normalized basis, built from the ladder weights
/// z e^_k = sqrt(k+1) e^_{k+1} and d/dz e^_k = sqrt(k) e^_{k-1}.
///
///   translation  Q f = (F + aEz) f + E f'
///   dilation     R f = [H - l beta z] f + l (z - G) f',  beta = aG + b
///
/// sub[k] sits at (k+1, k), super[k] at (k, k+1).
struct GeneratorMatrix {
    GeneratorKind kind = GeneratorKind::translation;
    std::vector<Complex> sub;
    std::vector<Complex> diag;
    std::vector<Complex> super;

    int dim() const { return static_cast<int>(diag.size()); }
    Matrix dense() const;
    Vector apply(const Vector& v) const;
};

GeneratorMatrix generator_matrix(const SemigroupFamily& fam, int dim);

enum class DifferenceScheme { forward, central };

struct FdConvergence {
    std::vector<double> steps;
    std::vector<double> errors;
    double slope = 0.0;  // least-squares slope of log(error) against log(h)
};

/// {1e-2, 3e-3, 1e-3, 3e-4, 1e-4}
std::vector<double> default_fd_steps();

/// Errors ||(W(h) e^_k - e^_k)/h - Q e^_k|| (forward) or
/// ||(W(h) e^_k - W(-h) e^_k)/2h - Q e^_k|| (central) and their log-log slope.
FdConvergence check_generator_fd(const SemigroupFamily& fam, int k, int dim, std::span<const double> steps,
                                 DifferenceScheme scheme = DifferenceScheme::forward);

double loglog_slope(std::span<const double> x, std::span<const double> y);

/// H - l beta G + k l for k = 0..k_max. The translation generator has empty
/// point spectrum, so translation families throw InputError.
std::vector<Complex> point_spectrum_predicted(const SemigroupFamily& fam, int k_max);

/// f_m(z) = (z - G)^m e^{beta z}; monomial coefficient n is
/// sum_j binom(m,j) (-G)^(m-j) beta^(n-j) / (n-j)!. Returned in normalized coordinates.
FockVector eigenfunction_coeffs(int m, Complex G, Complex beta, int dim);

/// ||R_N f_m - lambda_m f_m|| / ||f_m||.
double eigen_residual(const SemigroupFamily& fam, int m, int dim);

struct EmptySpectrumCertificate {
    std::vector<int> dims;
    std::vector<double> partial_norms;  // S_N
    std::vector<double> doubled;        // S_2N
    std::vector<double> ratios;         // S_2N / S_N
    bool certified = false;             // every ratio >= 10
};

/// Partial Fock norms S_N = sum_{k<N} |f_k|^2 k! of the power series solving
/// (k+1) f_{k+1} = alpha f_k + 2 gamma f_{k-1}, f_0 given. gamma = 0 is rejected.
EmptySpectrumCertificate candidate_partial_norms(Complex alpha, Complex gamma, Complex f0,
                                                 std::span<const int> dims);

/// Candidate eigenfunction of Q for eigenvalue eta: alpha = (eta - F)/E, gamma = -a/2.
EmptySpectrumCertificate check_empty_point_spectrum(const SemigroupFamily& fam, Complex eta,
                                                    std::span<const int> dims, Complex f0 = 1.0);

/// Largest eigenvalue of the Hermitian part (M + M^H)/2; <= 0 means dissipative.
double dissipativity_margin(const Matrix& m);

/// min over alpha and samples of ||(alpha I - M) v|| / (alpha ||v||).
double resolvent_bound_check(const Matrix& m, std::span<const double> alphas, std::span<const Vector> samples);

/// exp(t M) by scaling and squaring with diagonal Pade approximants (degree
/// 3, 5, 7, 9 or 13 chosen from the 1-norm).
Matrix matrix_exponential(const Matrix& m, double t = 1.0);

struct StoneAdjointResidual {
    /// max over columns k <= low_degree of |(d/dt W_N(t)^H at 0 - Q_N^H) e^_k|
    double adjoint_generator = 0.0;
    /// max |Q_N M - M Q_N^T|
    double c_symmetry = 0.0;
};

StoneAdjointResidual check_stone_adjoint_relation(const SemigroupFamily& fam, const ConjugationParams& conj,
                                                  int dim, int low_degree = 6, double h = 1e-4);

struct SpectrumReport {
    std::vector<Complex> predicted;
    std::vector<double> residuals;
    std::vector<Complex> truncated_eigs;
};

/// Predicted lattice, eigenfunction residuals for m = 0..k_max and eigenvalues
/// of the dense truncation (informational only for beta != 0).
SpectrumReport spectrum_report(const SemigroupFamily& fam, int k_max, int dim);

}  // namespace fockcs
