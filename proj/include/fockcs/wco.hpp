#pragma once

#include <string>

#include "fockcs/core.hpp"
#include "fockcs/fock.hpp"

namespace fockcs {

struct ConjugationParams;

/// Weighted composition symbols phi(z) = A z + B, psi(z) = C exp(D z).
struct WCOParams {
    Complex A{1.0};
    Complex B{0.0};
    Complex C{1.0};
    Complex D{0.0};

    static WCOParams identity() { return {}; }
};

/// Entry (n, k) of the weighted composition matrix in the normalized basis:
/// the n-th normalized coefficient of C exp(Dz) (Az + B)^k / sqrt(k!), i.e.
///
///   C sqrt(n!/k!) sum_{j<=min(n,k)} binom(k,j) A^j B^(k-j) D^(n-j) / (n-j)!
///
/// Every term is formed in log-magnitude with unit-modulus phases, so no
/// intermediate factorial or power overflows. `log_scale` is added to each
/// term's log-magnitude.
Complex wco_entry(const WCOParams& p, int n, int k, double log_scale = 0.0);

/// Dense N x N matrix of W_{psi,phi} on the first N normalized basis vectors,
/// built with the closed double sum. Columns are computed in parallel.
Matrix wco_matrix(const WCOParams& p, int dim);

/// psi * (f o phi) for a truncated f, via the column recursion
/// g_{k+1} = (A z + B) g_k / sqrt(k+1) starting from g_0 = C exp(Dz).
/// Exact up to rounding on the truncation, since multiplication by (Az + B)
/// only moves coefficients to higher indices.
FockVector apply_wco(const WCOParams& p, const FockVector& f);

struct BoundednessVerdict {
    bool bounded = false;
    std::string reason;
};

/// Boundedness of W_{psi,phi} on F^2: |A| < 1, or |A| = 1 with D + A conj(B) = 0.
BoundednessVerdict is_bounded(const WCOParams& p, double tol = 1e-12);

struct SelfadjointSymbolVerdict {
    bool symbol_condition = false;
    /// D - (aB - bA + b)
    Complex mismatch{};
    /// The criterion also needs W = W_max, which has no finite certificate.
    bool requires_maximal_domain = true;
};

/// Symbol-level C_{a,b,c}-selfadjointness test D = aB - bA + b.
SelfadjointSymbolVerdict is_c_selfadjoint_symbols(const WCOParams& p, const ConjugationParams& q,
                                                  double tol = 1e-12);

/// Symbols of W_{p2} W_{p1}: phi = phi1 o phi2, psi = psi2 (psi1 o phi2).
WCOParams compose(const WCOParams& p2, const WCOParams& p1);

/// Largest singular value of the truncated matrix.
double truncated_operator_norm(const Matrix& m);

namespace kernels {

/// Single-threaded reference for wco_matrix; results are bitwise identical.
Matrix wco_matrix_serial(const WCOParams& p, int dim);
Matrix wco_matrix_parallel(const WCOParams& p, int dim);

}  // namespace kernels

}  // namespace fockcs
