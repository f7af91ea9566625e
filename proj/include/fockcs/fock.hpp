#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "fockcs/core.hpp"

namespace fockcs {

/// Coordinate convention of a coefficient sequence.
///
/// normalized: coefficients against e^_k = z^k / sqrt(k!), an orthonormal basis
///             of the Fock space, so the inner product is the Euclidean one.
/// monomial:   coefficients f_k of f(z) = sum f_k z^k.
enum class Basis { normalized, monomial };

std::string to_string(Basis b);
Basis basis_from_string(const std::string& s);

/// Truncated element of the Fock space F^2. Immutable after construction.
class FockVector {
public:
    FockVector(std::vector<Complex> coeffs, Basis basis = Basis::normalized);
    explicit FockVector(const Vector& normalized);

    static FockVector zero(int dim);
    /// z^k, i.e. sqrt(k!) e^_k.
    static FockVector monomial_power(int k, int dim);
    /// e^_k = z^k / sqrt(k!).
    static FockVector basis_vector(int k, int dim);

    int dim() const noexcept { return static_cast<int>(coeffs_.size()); }
    Basis basis() const noexcept { return basis_; }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    Complex operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }

    FockVector to_normalized() const;
    FockVector to_monomial() const;
    /// Normalized coordinates as an Eigen vector.
    Vector as_normalized() const;

    FockVector scaled(Complex alpha) const;
    FockVector plus(const FockVector& other) const;

private:
    std::vector<Complex> coeffs_;
    Basis basis_;
};

struct TruncationConfig {
    int dim = 64;
    std::map<std::string, double> tolerances;

    void validate() const;
    double tolerance(const std::string& name, double fallback) const;
};

Complex inner_product(const FockVector& f, const FockVector& g);
double norm(const FockVector& f);

/// Reproducing kernel K_z(u) = exp(u conj(z)), truncated to `dim` coefficients.
FockVector kernel_vector(Complex z, int dim);

/// Pointwise value of the polynomial representative sum f_k z^k.
Complex evaluate(const FockVector& f, Complex z);

/// Upper bound on |evaluate(f,z) - <f, K_z>| caused by truncating K_z at `dim`:
/// sqrt(sum_{k>=dim} |z|^{2k}/k!) * ||f||.
double kernel_tail_bound(const FockVector& f, Complex z);

}  // namespace fockcs
