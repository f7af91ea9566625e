#include "fockcs/conjugation.hpp"

#include <cmath>
#include <sstream>

namespace fockcs {
namespace {

std::string show(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

const ConjugationParams& ConjugationParams::validate(double tol) const {
    const double d1 = std::abs(std::abs(a) - 1.0);
    if (!(d1 <= tol)) throw ConstraintError("|a| = 1", "deviation " + show(d1));
    const double d2 = std::abs(std::conj(a) * b + std::conj(b));
    if (!(d2 <= tol)) throw ConstraintError("conj(a) b + conj(b) = 0", "deviation " + show(d2));
    const double d3 = std::abs(std::norm(c) * std::exp(std::norm(b)) - 1.0);
    if (!(d3 <= tol)) throw ConstraintError("|c|^2 exp(|b|^2) = 1", "deviation " + show(d3));
    return *this;
}

AntilinearOperator conjugation_matrix(const ConjugationParams& p, int dim) {
    return {wco_matrix(p.linear_symbols(), dim)};
}

FockVector apply_conjugation(const AntilinearOperator& op, const FockVector& f) {
    if (f.dim() != op.dim()) throw InputError("apply_conjugation: dimension mismatch");
    return FockVector(Vector(op.M * f.as_normalized().conjugate()));
}

std::vector<double> check_involution(const AntilinearOperator& op, int degree) {
    if (degree < 0 || degree >= op.dim()) throw InputError("check_involution: degree outside truncation");
    // C^2 f = M conj(M conj f) = M conj(M) f
    const Matrix sq = op.M * op.M.conjugate();
    std::vector<double> res;
    res.reserve(static_cast<std::size_t>(degree) + 1);
    for (int k = 0; k <= degree; ++k) {
        Vector col = sq.col(k);
        col(k) -= 1.0;
        res.push_back(col.norm());
    }
    return res;
}

Complex check_isometry(const AntilinearOperator& op, const FockVector& f, const FockVector& g) {
    return inner_product(apply_conjugation(op, f), apply_conjugation(op, g)) - inner_product(g, f);
}

double check_matrix_c_symmetry(const Matrix& T, const AntilinearOperator& op) {
    if (T.rows() != op.M.rows() || T.cols() != op.M.cols())
        throw InputError("check_matrix_c_symmetry: dimension mismatch");
    return max_abs(T * op.M - op.M * T.transpose());
}

Matrix c_adjoint(const Matrix& T, const AntilinearOperator& op) {
    return op.M * T.transpose() * op.M.conjugate();
}

}  // namespace fockcs
