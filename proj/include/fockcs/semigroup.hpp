#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "fockcs/conjugation.hpp"
#include "fockcs/core.hpp"
#include "fockcs/fock.hpp"
#include "fockcs/quadrature.hpp"
#include "fockcs/wco.hpp"

namespace fockcs {

/// zeta_t(z) = z + E t, xi_t(z) = exp(F t + a E^2 t^2 / 2 + a E t z).
struct Translation {
    Complex E{1.0};
    Complex F{0.0};
};

/// zeta_t(z) = e^{l t} z + G (1 - e^{l t}),
/// xi_t(z)   = exp[H t + G beta (e^{l t} - l t - 1) + beta (1 - e^{l t}) z],  beta = aG + b.
struct Dilation {
    Complex ell{-1.0};
    Complex G{0.0};
    Complex H{0.0};
};

/// One of the two C_{a,b,c}-selfadjoint weighted composition semigroups
/// W(t) f = xi_t (f o zeta_t).
class SemigroupFamily {
public:
    using Variant = std::variant<Translation, Dilation>;

    /// Throws ConstraintError for E = 0, ell = 0 or invalid conjugation parameters.
    SemigroupFamily(Variant v, ConjugationParams conj);

    const Variant& variant() const noexcept { return variant_; }
    const ConjugationParams& conjugation() const noexcept { return conj_; }
    bool is_translation() const noexcept { return std::holds_alternative<Translation>(variant_); }
    const Translation& translation() const { return std::get<Translation>(variant_); }
    const Dilation& dilation() const { return std::get<Dilation>(variant_); }

    /// aG + b for the dilation family, zero otherwise.
    Complex beta() const;

private:
    Variant variant_;
    ConjugationParams conj_;
};

/// Symbols (A, B, C, D) of W(t). Throws InputError for t < 0.
WCOParams family_eval(const SemigroupFamily& fam, double t);

/// Same closed forms at any real t. The formulas are entire in t, so negative
/// t gives the backward flow; used for central differences at t = 0.
WCOParams family_eval_flow(const SemigroupFamily& fam, double t);

Complex flow_apply(const WCOParams& p, Complex z);      // zeta: A z + B
Complex cocycle_apply(const WCOParams& p, Complex z);   // xi:   C e^{D z}

/// max |zeta_{t+s}(z) - zeta_t(zeta_s(z))| over the samples.
double check_semiflow(const SemigroupFamily& fam, double t, double s, std::span<const Complex> z);

/// max |xi_{t+s}(z) - xi_t(z) xi_s(zeta_t(z))| / |xi_{t+s}(z)| over the samples.
double check_semicocycle(const SemigroupFamily& fam, double t, double s, std::span<const Complex> z);

/// Solution exp(t lambda0 + int_0^t dpsi) of Lambda(t+s) = Lambda(t) Lambda(s) e^{Psi(t,s)},
/// where dpsi(tau) = dPsi/ds(tau, 0). Throws NumericalError if quadrature does not converge.
Complex solve_scaling_equation(Complex lambda0, const std::function<Complex(double)>& dpsi, double t,
                               const QuadratureConfig& quad = {});

/// dPsi/ds(tau, 0) for the family's C(t) cocycle relation; paired with
/// lambda0 = F (translation) or H (dilation) it reproduces C(t).
std::function<Complex(double)> scaling_equation_dpsi(const SemigroupFamily& fam);
Complex scaling_equation_lambda0(const SemigroupFamily& fam);

Matrix semigroup_matrix(const SemigroupFamily& fam, double t, int dim);

/// ||W(t) W(s) e^_k - W(t+s) e^_k|| / ||W(t+s) e^_k|| on an N-truncation;
/// W(s) is applied first and its full N-vector is kept.
double check_semigroup_law(const SemigroupFamily& fam, double t, double s, int k, int dim);

struct GrowthProbe {
    double omega = 0.0;
    std::vector<double> t_grid;

    /// {0} followed by 64 geometric points from 1/8 to 8.
    static GrowthProbe standard(double omega);
    void validate() const;
};

struct GrowthRow {
    double t;
    double norm;
    double weighted;  // e^{-omega t} norm
};

struct GrowthEstimate {
    double sup = 0.0;
    double argmax_t = 0.0;
    bool diverging = false;
    std::vector<GrowthRow> rows;
};

/// sup over the grid of e^{-omega t} ||W_N(t) f||. Diverging when the last three
/// weighted values strictly increase and each exceeds 10x the grid minimum, or
/// when any value overflows.
GrowthEstimate n_omega_estimate(const SemigroupFamily& fam, const FockVector& f, const GrowthProbe& probe);

/// |C(t)| e^{|D(t)|^2 / 2}, the norm of W(t) 1.
double norm_W_one_closed_form(const SemigroupFamily& fam, double t);

struct LaplaceConfig {
    QuadratureConfig quad{7, 8, 12, 1e-10};
    /// Integrand tail e^{(omega - Re lambda) T} N_omega must fall below this.
    double tail_tol = 1e-12;
};

/// int_0^T e^{-lambda t} W_N(t) f dt with T from the measured growth bound.
/// Throws NumericalError when Re lambda <= omega or the growth probe diverges.
FockVector laplace_resolvent(const SemigroupFamily& fam, Complex lambda, const FockVector& f, double omega,
                             const LaplaceConfig& cfg = {});

/// Bounded (and then C-symmetric) exactly when conj(E) + aE = 0 for translation,
/// or Re l < 0, or Re l = 0 with aG + b - conj(G) = 0 for dilation.
bool family_is_bounded(const SemigroupFamily& fam, double tol = 1e-12);

namespace kernels {

std::vector<GrowthRow> growth_rows_serial(const SemigroupFamily& fam, const FockVector& f,
                                          const GrowthProbe& probe);
std::vector<GrowthRow> growth_rows_parallel(const SemigroupFamily& fam, const FockVector& f,
                                            const GrowthProbe& probe);

}  // namespace kernels

}  // namespace fockcs
