#pragma once

#include <vector>

#include "fockcs/core.hpp"
#include "fockcs/fock.hpp"
#include "fockcs/wco.hpp"

namespace fockcs {

/// Weighted composition conjugation C_{a,b,c} f(z) = c e^{bz} conj(f(conj(az + b))).
/// Stored exactly as given; validate() checks |a| = 1, conj(a) b + conj(b) = 0
/// and |c|^2 e^{|b|^2} = 1.
struct ConjugationParams {
    Complex a{1.0};
    Complex b{0.0};
    Complex c{1.0};

    /// Throws ConstraintError naming the first violated constraint.
    const ConjugationParams& validate(double tol = 1e-12) const;

    /// Symbols of the linear part: phi(z) = az + b, psi(z) = c e^{bz}.
    WCOParams linear_symbols() const { return {a, b, c, b}; }
};

/// f -> M conj(f) on normalized coefficient vectors.
struct AntilinearOperator {
    Matrix M;

    int dim() const { return static_cast<int>(M.rows()); }
};

AntilinearOperator conjugation_matrix(const ConjugationParams& p, int dim);

FockVector apply_conjugation(const AntilinearOperator& op, const FockVector& f);

/// ||C^2 e^_k - e^_k|| for k = 0..degree, on normalized basis vectors.
std::vector<double> check_involution(const AntilinearOperator& op, int degree);

/// <Cf, Cg> - <g, f>.
Complex check_isometry(const AntilinearOperator& op, const FockVector& f, const FockVector& g);

/// max |T M - M T^T|; zero means T is C-symmetric at this truncation.
double check_matrix_c_symmetry(const Matrix& T, const AntilinearOperator& op);

/// C T* C as a matrix: M T^T conj(M).
Matrix c_adjoint(const Matrix& T, const AntilinearOperator& op);

}  // namespace fockcs
