#include "fockcs/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fockcs {
namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b* (fifth minus fourth order weights)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;
constexpr int kMaxSteps = 1'000'000;

Matrix eval_checked(const TimeDependentOperator& B, double t) {
    Matrix m = B.eval(t);
    if (m.rows() != B.dim || m.cols() != B.dim) throw InputError("TimeDependentOperator: eval returned wrong shape");
    if (!m.allFinite()) throw InputError("TimeDependentOperator: non-finite entries at t = " + std::to_string(t));
    return m;
}

double scaled_error(const Matrix& err, const Matrix& y0, const Matrix& y1, double tol) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < err.cols(); ++j) {
        for (Eigen::Index i = 0; i < err.rows(); ++i) {
            const double sc = tol * std::max({1.0, std::abs(y0(i, j)), std::abs(y1(i, j))});
            acc += std::norm(err(i, j)) / (sc * sc);
        }
    }
    return std::sqrt(acc / static_cast<double>(err.size()));
}

// Advances y from s to t (either direction) with one adaptive DP5(4) sweep.
void integrate_segment(const TimeDependentOperator& B, Matrix& y, double s, double t, double rel_tol,
                       IntegratorStats& stats) {
    const double dir = t > s ? 1.0 : -1.0;
    double tau = s;
    Matrix k1 = eval_checked(B, tau) * y;

    // initial step from the size of B(s)
    const double bnorm = std::max(1e-8, max_abs(k1));
    double h = std::min(std::abs(t - s), 0.1 * std::pow(rel_tol, 0.2) / bnorm);

    const double h_min = 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(s), std::abs(t)) +
                         1e-300;
    for (int step = 0; step < kMaxSteps; ++step) {
        const double remaining = std::abs(t - tau);
        if (remaining <= 0.0) break;
        bool last = false;
        if (h >= remaining) {
            h = remaining;
            last = true;
        }
        if (h < h_min) throw NumericalError("evolve: step size underflow (stiff or singular B)");
        const double hs = dir * h;
        const Matrix k2 = eval_checked(B, tau + c2 * hs) * (y + hs * (a21 * k1));
        const Matrix k3 = eval_checked(B, tau + c3 * hs) * (y + hs * (a31 * k1 + a32 * k2));
        const Matrix k4 = eval_checked(B, tau + c4 * hs) * (y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
        const Matrix k5 = eval_checked(B, tau + c5 * hs) * (y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double t_new = last ? t : tau + hs;
        const Matrix k6 = eval_checked(B, tau + hs) *
                          (y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        Matrix y_new = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Matrix k7 = eval_checked(B, t_new) * y_new;
        const Matrix err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double ratio = scaled_error(err, y, y_new, rel_tol);
        if (!std::isfinite(ratio)) throw NumericalError("evolve: non-finite solution");
        const double fac = std::clamp(kSafety * std::pow(std::max(ratio, 1e-12), -0.2), kFacMin, kFacMax);
        if (ratio <= 1.0) {
            y = std::move(y_new);
            k1 = k7;  // first-same-as-last
            tau = t_new;
            ++stats.accepted;
            stats.max_error_ratio = std::max(stats.max_error_ratio, ratio);
            if (last) break;
            h *= fac;
        } else {
            ++stats.rejected;
            h *= std::min(1.0, fac);
        }
    }
    if (tau != t) throw NumericalError("evolve: step budget exhausted");
}

}  // namespace

EvolutionOperator evolve(const TimeDependentOperator& B, double s, double t, double rel_tol) {
    if (B.dim < 1 || !B.eval) throw InputError("evolve: operator has no dimension or callback");
    if (!(rel_tol > 0.0)) throw InputError("evolve: rel_tol must be > 0");
    EvolutionOperator out;
    out.s = s;
    out.t = t;
    Matrix y = Matrix::Identity(B.dim, B.dim);

    // restart the integrator at every kink of B strictly between s and t
    std::vector<double> stops;
    for (double b : B.breakpoints)
        if (std::min(s, t) < b && b < std::max(s, t)) stops.push_back(b);
    std::sort(stops.begin(), stops.end());
    if (t < s) std::reverse(stops.begin(), stops.end());
    stops.push_back(t);

    double from = s;
    for (double to : stops) {
        if (to != from) integrate_segment(B, y, from, to, rel_tol, out.stats);
        from = to;
    }
    out.matrix = std::move(y);
    return out;
}

EvolutionAxiomResiduals check_evolution_axioms(const TimeDependentOperator& B, double s, double r, double t,
                                               double rel_tol) {
    if (!(t >= r && r >= s)) throw InputError("check_evolution_axioms: requires t >= r >= s");
    EvolutionAxiomResiduals res;
    res.identity = max_abs(evolve(B, t, t, rel_tol).matrix - Matrix::Identity(B.dim, B.dim));
    const Matrix utr = evolve(B, r, t, rel_tol).matrix;
    const Matrix urs = evolve(B, s, r, rel_tol).matrix;
    const Matrix uts = evolve(B, s, t, rel_tol).matrix;
    res.composition = max_abs(utr * urs - uts);
    return res;
}

double check_adjoint_family(const TimeDependentOperator& B, double s, double t, const Vector& z, double h,
                            double rel_tol) {
    if (!(t > s)) throw InputError("check_adjoint_family: requires t > s");
    if (!(h > 0.0)) throw InputError("check_adjoint_family: h must be > 0");
    if (z.size() != B.dim) throw InputError("check_adjoint_family: dimension mismatch");
    const Matrix uts = evolve(B, s, t, rel_tol).matrix;
    const Matrix uhs = evolve(B, t, t + h, rel_tol).matrix * uts;
    const Vector lhs = (uhs.adjoint() * z - uts.adjoint() * z) / h;
    const Vector rhs = uts.adjoint() * (eval_checked(B, t).adjoint() * z);
    return (lhs - rhs).norm();
}

void require_conjugation_unitary(const Matrix& conj_unitary, double tol) {
    if (conj_unitary.rows() != conj_unitary.cols()) throw InputError("conjugation matrix must be square");
    const double dev =
        max_abs(conj_unitary * conj_unitary.conjugate() - Matrix::Identity(conj_unitary.rows(), conj_unitary.cols()));
    if (!(dev <= tol))
        throw InputError("conjugation matrix fails U conj(U) = I (deviation " + std::to_string(dev) + ")");
}

std::vector<double> check_nonauto_stone(const TimeDependentOperator& B, const Matrix& conj_unitary,
                                        std::span<const double> s_grid) {
    require_conjugation_unitary(conj_unitary);
    if (conj_unitary.rows() != B.dim) throw InputError("check_nonauto_stone: dimension mismatch");
    std::vector<double> out;
    out.reserve(s_grid.size());
    for (double s : s_grid) {
        const Matrix b = eval_checked(B, s);
        out.push_back(max_abs(b * conj_unitary - conj_unitary * b.transpose()));
    }
    return out;
}

double check_evolution_c_symmetry(const TimeDependentOperator& B, const Matrix& conj_unitary, double s, double t,
                                  double rel_tol) {
    require_conjugation_unitary(conj_unitary);
    if (conj_unitary.rows() != B.dim) throw InputError("check_evolution_c_symmetry: dimension mismatch");
    const Matrix u = evolve(B, s, t, rel_tol).matrix;
    return max_abs(u * conj_unitary - conj_unitary * u.transpose());
}

Matrix bagchi_H(const BagchiParams& p, double t) {
    const double kappa = p.kappa(t);
    const double lam = p.lam(t);
    Matrix sz(2, 2), sp(2, 2), sm(2, 2);
    sz << 1.0, 0.0, 0.0, -1.0;
    sp << 0.0, 2.0, 0.0, 0.0;
    sm << 0.0, 0.0, 2.0, 0.0;
    return p.nu * Matrix::Identity(2, 2) + kI * kappa * sz + (lam / 2.0) * (sp + sm);
}

TimeDependentOperator bagchi_hamiltonian(const BagchiParams& p) {
    return {2, [p](double t) -> Matrix { return -kI * bagchi_H(p, t); }};
}

TimeDependentOperator constant_operator(const Matrix& b) {
    if (b.rows() != b.cols()) throw InputError("constant_operator: square matrix required");
    return {static_cast<int>(b.rows()), [b](double) { return b; }};
}

namespace kernels {

std::vector<EvolutionOperator> evolve_many_serial(const TimeDependentOperator& B,
                                                  std::span<const std::pair<double, double>> s_t,
                                                  double rel_tol) {
    std::vector<EvolutionOperator> out;
    out.reserve(s_t.size());
    for (const auto& [s, t] : s_t) out.push_back(evolve(B, s, t, rel_tol));
    return out;
}

std::vector<EvolutionOperator> evolve_many_parallel(const TimeDependentOperator& B,
                                                    std::span<const std::pair<double, double>> s_t,
                                                    double rel_tol) {
    const int n = static_cast<int>(s_t.size());
    std::vector<EvolutionOperator> out(static_cast<std::size_t>(n));
    std::string error;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            const auto& [s, t] = s_t[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(i)] = evolve(B, s, t, rel_tol);
        } catch (const std::exception& e) {
#pragma omp critical(fockcs_evolve_error)
            error = e.what();
        }
    }
    if (!error.empty()) throw NumericalError(error);
    return out;
}

}  // namespace kernels

}  // namespace fockcs
