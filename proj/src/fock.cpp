#include "fockcs/fock.hpp"

#include <cmath>

#include "fockcs/factorial.hpp"

namespace fockcs {

std::string to_string(Basis b) {
    return b == Basis::normalized ? "normalized" : "monomial";
}

Basis basis_from_string(const std::string& s) {
    if (s == "normalized") return Basis::normalized;
    if (s == "monomial") return Basis::monomial;
    throw InputError("unknown basis tag '" + s + "'");
}

FockVector::FockVector(std::vector<Complex> coeffs, Basis basis)
    : coeffs_(std::move(coeffs)), basis_(basis) {
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!is_finite(coeffs_[k]))
            throw InputError("FockVector: non-finite coefficient at index " + std::to_string(k));
    }
}

FockVector::FockVector(const Vector& normalized)
    : FockVector(std::vector<Complex>(normalized.data(), normalized.data() + normalized.size()),
                 Basis::normalized) {}

FockVector FockVector::zero(int dim) {
    return FockVector(std::vector<Complex>(static_cast<std::size_t>(dim)), Basis::normalized);
}

FockVector FockVector::monomial_power(int k, int dim) {
    if (k < 0 || k >= dim) throw InputError("monomial degree outside truncation");
    std::vector<Complex> c(static_cast<std::size_t>(dim));
    c[static_cast<std::size_t>(k)] = sqrt_factorial(k);
    return FockVector(std::move(c), Basis::normalized);
}

FockVector FockVector::basis_vector(int k, int dim) {
    if (k < 0 || k >= dim) throw InputError("basis index outside truncation");
    std::vector<Complex> c(static_cast<std::size_t>(dim));
    c[static_cast<std::size_t>(k)] = 1.0;
    return FockVector(std::move(c), Basis::normalized);
}

FockVector FockVector::to_normalized() const {
    if (basis_ == Basis::normalized) return *this;
    std::vector<Complex> c(coeffs_.size());
    for (std::size_t k = 0; k < c.size(); ++k)
        c[k] = coeffs_[k] * sqrt_factorial(static_cast<int>(k));
    return FockVector(std::move(c), Basis::normalized);
}

FockVector FockVector::to_monomial() const {
    if (basis_ == Basis::monomial) return *this;
    std::vector<Complex> c(coeffs_.size());
    for (std::size_t k = 0; k < c.size(); ++k)
        c[k] = coeffs_[k] / sqrt_factorial(static_cast<int>(k));
    return FockVector(std::move(c), Basis::monomial);
}

Vector FockVector::as_normalized() const {
    const FockVector n = to_normalized();
    return Eigen::Map<const Vector>(n.coeffs_.data(), static_cast<Eigen::Index>(n.coeffs_.size()));
}

FockVector FockVector::scaled(Complex alpha) const {
    std::vector<Complex> c(coeffs_);
    for (auto& x : c) x *= alpha;
    return FockVector(std::move(c), basis_);
}

FockVector FockVector::plus(const FockVector& other) const {
    if (other.dim() != dim()) throw InputError("FockVector::plus: dimension mismatch");
    const FockVector lhs = to_normalized();
    const FockVector rhs = other.to_normalized();
    std::vector<Complex> c(lhs.coeffs_);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += rhs.coeffs_[k];
    return FockVector(std::move(c), Basis::normalized);
}

void TruncationConfig::validate() const {
    if (dim < 2) throw ConstraintError("dim >= 2", "got " + std::to_string(dim));
    for (const auto& [name, value] : tolerances) {
        if (!(value > 0.0) || !std::isfinite(value))
            throw ConstraintError("tolerance > 0", name);
    }
}

double TruncationConfig::tolerance(const std::string& name, double fallback) const {
    auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
}

Complex inner_product(const FockVector& f, const FockVector& g) {
    if (f.dim() != g.dim())
        throw InputError("inner_product: dimension mismatch (" + std::to_string(f.dim()) + " vs " +
                         std::to_string(g.dim()) + ")");
    const FockVector fn = f.to_normalized();
    const FockVector gn = g.to_normalized();
    Complex s{};
    for (int k = 0; k < fn.dim(); ++k) s += fn[k] * std::conj(gn[k]);
    return s;
}

double norm(const FockVector& f) {
    const FockVector fn = f.to_normalized();
    double s = 0.0;
    for (int k = 0; k < fn.dim(); ++k) s += std::norm(fn[k]);
    return std::sqrt(s);
}

FockVector kernel_vector(Complex z, int dim) {
    if (dim < 1) throw InputError("kernel_vector: dim must be >= 1");
    std::vector<Complex> c(static_cast<std::size_t>(dim));
    // normalized coefficient conj(z)^k / sqrt(k!)
    Complex term = 1.0;
    const Complex zc = std::conj(z);
    for (int k = 0; k < dim; ++k) {
        c[static_cast<std::size_t>(k)] = term;
        term *= zc / std::sqrt(static_cast<double>(k + 1));
    }
    return FockVector(std::move(c), Basis::normalized);
}

Complex evaluate(const FockVector& f, Complex z) {
    const FockVector fn = f.to_normalized();
    Complex s{};
    Complex term = 1.0;  // z^k / sqrt(k!)
    for (int k = 0; k < fn.dim(); ++k) {
        s += fn[k] * term;
        term *= z / std::sqrt(static_cast<double>(k + 1));
    }
    return s;
}

double kernel_tail_bound(const FockVector& f, Complex z) {
    const double r2 = std::norm(z);
    // sum_{k>=dim} r2^k / k!, summed until terms stop contributing
    double term = std::exp(static_cast<double>(f.dim()) * std::log(std::max(r2, 1e-300)) -
                           log_factorial(f.dim()));
    if (r2 == 0.0) return 0.0;
    double tail = 0.0;
    for (int k = f.dim(); k < f.dim() + 2000 && term > tail * 1e-17; ++k) {
        tail += term;
        term *= r2 / static_cast<double>(k + 1);
    }
    return std::sqrt(tail) * norm(f);
}

}  // namespace fockcs
