#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fockcs/core.hpp"

namespace fockcs {

/// t -> B(t), a continuous family of dim x dim matrices. eval must return
/// finite entries and, for parallel sweeps, be safe to call concurrently.
struct TimeDependentOperator {
    int dim = 0;
    std::function<Matrix(double)> eval;
    /// Times where B is continuous but not smooth; evolve restarts there.
    std::vector<double> breakpoints = {};
};

struct IntegratorStats {
    int accepted = 0;
    int rejected = 0;
    double max_error_ratio = 0.0;  // largest accepted scaled local error (<= 1)
};

/// U(t, s) for v' = B(t) v. Columns are the solutions started from unit vectors.
struct EvolutionOperator {
    double t = 0.0;
    double s = 0.0;
    Matrix matrix;
    IntegratorStats stats;
};

/// Adaptive Dormand-Prince 5(4) on the full matrix ODE U' = B(t) U, U(s) = I.
/// Local error per step is kept below rel_tol * max(1, |U|) entrywise (RMS norm).
/// t < s integrates backwards. Throws NumericalError on step-size underflow.
EvolutionOperator evolve(const TimeDependentOperator& B, double s, double t, double rel_tol = 1e-10);

struct EvolutionAxiomResiduals {
    double identity = 0.0;     // max |U(t,t) - I|
    double composition = 0.0;  // max |U(t,r) U(r,s) - U(t,s)|
};

EvolutionAxiomResiduals check_evolution_axioms(const TimeDependentOperator& B, double s, double r, double t,
                                               double rel_tol = 1e-10);

/// || (U(t+h,s)^H z - U(t,s)^H z)/h - U(t,s)^H B(t)^H z ||, with U(t+h,s) = U(t+h,t) U(t,s).
double check_adjoint_family(const TimeDependentOperator& B, double s, double t, const Vector& z, double h,
                            double rel_tol = 1e-12);

/// Per grid point, max |B(s) U - U B(s)^T|, the finite form of B(s) = C B(s)^* C
/// for C = U o conj. Throws InputError unless U conj(U) = I.
std::vector<double> check_nonauto_stone(const TimeDependentOperator& B, const Matrix& conj_unitary,
                                        std::span<const double> s_grid);

/// max |U(t,s) V - V U(t,s)^T| for C = V o conj.
double check_evolution_c_symmetry(const TimeDependentOperator& B, const Matrix& conj_unitary, double s, double t,
                                  double rel_tol = 1e-10);

/// Throws InputError unless U conj(U) = I within tol.
void require_conjugation_unitary(const Matrix& conj_unitary, double tol = 1e-12);

/// H(t) = nu I + i kappa(t) sigma_z + lambda(t)/2 (sigma_+ + sigma_-), with
/// sigma_+ = [[0,2],[0,0]] and sigma_- = [[0,0],[2,0]].
struct BagchiParams {
    double nu = 0.0;
    std::function<double(double)> kappa = [](double) { return 0.0; };
    std::function<double(double)> lam = [](double) { return 0.0; };
};

Matrix bagchi_H(const BagchiParams& p, double t);

/// B(t) = -i H(t), so v' = B v encodes i v' = H v.
TimeDependentOperator bagchi_hamiltonian(const BagchiParams& p);

/// Time-independent B.
TimeDependentOperator constant_operator(const Matrix& b);

namespace kernels {

/// U(t_i, s_i) for each pair; the parallel variant needs a thread-safe eval.
std::vector<EvolutionOperator> evolve_many_serial(const TimeDependentOperator& B,
                                                  std::span<const std::pair<double, double>> s_t,
                                                  double rel_tol);
std::vector<EvolutionOperator> evolve_many_parallel(const TimeDependentOperator& B,
                                                    std::span<const std::pair<double, double>> s_t,
                                                    double rel_tol);

}  // namespace kernels

}  // namespace fockcs
