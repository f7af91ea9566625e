#include "fockcs/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fockcs {

SemigroupFamily::SemigroupFamily(Variant v, ConjugationParams conj)
    : variant_(std::move(v)), conj_(conj) {
    conj_.validate();
    if (const auto* tr = std::get_if<Translation>(&variant_)) {
        if (tr->E == Complex{}) throw ConstraintError("E != 0", "translation family");
    } else if (std::get<Dilation>(variant_).ell == Complex{}) {
        throw ConstraintError("ell != 0", "dilation family");
    }
}

Complex SemigroupFamily::beta() const {
    if (is_translation()) return {};
    return conj_.a * dilation().G + conj_.b;
}

WCOParams family_eval_flow(const SemigroupFamily& fam, double t) {
    const Complex a = fam.conjugation().a;
    if (fam.is_translation()) {
        const auto& [E, F] = fam.translation();
        return {1.0, E * t, std::exp(F * t + a * E * E * t * t / 2.0), a * E * t};
    }
    const auto& [ell, G, H] = fam.dilation();
    const Complex beta = fam.beta();
    const Complex e = std::exp(ell * t);
    return {e, G * (1.0 - e), std::exp(H * t + G * beta * (e - ell * t - 1.0)), beta * (1.0 - e)};
}

WCOParams family_eval(const SemigroupFamily& fam, double t) {
    if (!(t >= 0.0)) throw InputError("family_eval: t must be >= 0");
    return family_eval_flow(fam, t);
}

Complex flow_apply(const WCOParams& p, Complex z) { return p.A * z + p.B; }

Complex cocycle_apply(const WCOParams& p, Complex z) { return p.C * std::exp(p.D * z); }

double check_semiflow(const SemigroupFamily& fam, double t, double s, std::span<const Complex> z) {
    const WCOParams pt = family_eval(fam, t);
    const WCOParams ps = family_eval(fam, s);
    const WCOParams pts = family_eval(fam, t + s);
    double worst = 0.0;
    for (Complex w : z)
        worst = std::max(worst, std::abs(flow_apply(pts, w) - flow_apply(pt, flow_apply(ps, w))));
    return worst;
}

double check_semicocycle(const SemigroupFamily& fam, double t, double s, std::span<const Complex> z) {
    const WCOParams pt = family_eval(fam, t);
    const WCOParams ps = family_eval(fam, s);
    const WCOParams pts = family_eval(fam, t + s);
    double worst = 0.0;
    for (Complex w : z) {
        const Complex lhs = cocycle_apply(pts, w);
        const Complex rhs = cocycle_apply(pt, w) * cocycle_apply(ps, flow_apply(pt, w));
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
    }
    return worst;
}

Complex solve_scaling_equation(Complex lambda0, const std::function<Complex(double)>& dpsi, double t,
                               const QuadratureConfig& quad) {
    if (t == 0.0) return 1.0;
    const QuadratureResult r = integrate(dpsi, 0.0, t, quad);
    return std::exp(t * lambda0 + r.value);
}

std::function<Complex(double)> scaling_equation_dpsi(const SemigroupFamily& fam) {
    const Complex a = fam.conjugation().a;
    if (fam.is_translation()) {
        // Psi(t, s) = B(t) D(s) = a E^2 t s
        const Complex E = fam.translation().E;
        return [k = a * E * E](double tau) { return k * tau; };
    }
    // Psi(t, s) = G beta (1 - e^{lt})(1 - e^{ls})
    const auto& d = fam.dilation();
    return [ell = d.ell, gb = d.G * fam.beta()](double tau) {
        return -ell * gb * (1.0 - std::exp(tau * ell));
    };
}

Complex scaling_equation_lambda0(const SemigroupFamily& fam) {
    return fam.is_translation() ? fam.translation().F : fam.dilation().H;
}

Matrix semigroup_matrix(const SemigroupFamily& fam, double t, int dim) {
    return wco_matrix(family_eval(fam, t), dim);
}

double check_semigroup_law(const SemigroupFamily& fam, double t, double s, int k, int dim) {
    const FockVector ek = FockVector::basis_vector(k, dim);
    const FockVector after_s = apply_wco(family_eval(fam, s), ek);
    const Vector composed = semigroup_matrix(fam, t, dim) * after_s.as_normalized();
    const Vector direct = semigroup_matrix(fam, t + s, dim).col(k);
    return (composed - direct).norm() / direct.norm();
}

GrowthProbe GrowthProbe::standard(double omega) {
    GrowthProbe p;
    p.omega = omega;
    p.t_grid.reserve(65);
    p.t_grid.push_back(0.0);
    // 1/8 * 64^(i/63): geometric from 1/8 to 8
    for (int i = 0; i < 64; ++i) p.t_grid.push_back(0.125 * std::pow(64.0, i / 63.0));
    p.t_grid.back() = 8.0;
    return p;
}

void GrowthProbe::validate() const {
    if (t_grid.empty()) throw InputError("GrowthProbe: empty t grid");
    if (t_grid.front() != 0.0) throw InputError("GrowthProbe: t grid must start at 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1])) throw InputError("GrowthProbe: t grid must be increasing");
}

namespace {

GrowthRow growth_row(const SemigroupFamily& fam, const FockVector& f, double omega, double t) {
    double n = std::numeric_limits<double>::infinity();
    try {
        n = norm(apply_wco(family_eval(fam, t), f));
    } catch (const NumericalError&) {
    } catch (const InputError&) {
        // non-finite coefficients surface as InputError from FockVector
    }
    return {t, n, std::exp(-omega * t) * n};
}

GrowthEstimate summarize(std::vector<GrowthRow> rows) {
    GrowthEstimate g;
    g.rows = std::move(rows);
    g.sup = g.rows.front().weighted;
    g.argmax_t = g.rows.front().t;
    double min_w = g.sup;
    for (const auto& r : g.rows) {
        if (!std::isfinite(r.weighted)) g.diverging = true;
        if (r.weighted > g.sup) {
            g.sup = r.weighted;
            g.argmax_t = r.t;
        }
        min_w = std::min(min_w, r.weighted);
    }
    const std::size_t n = g.rows.size();
    if (n >= 3) {
        const double w0 = g.rows[n - 3].weighted, w1 = g.rows[n - 2].weighted, w2 = g.rows[n - 1].weighted;
        const double floor = 10.0 * min_w;
        if (w0 < w1 && w1 < w2 && w0 > floor && w1 > floor && w2 > floor) g.diverging = true;
    }
    if (g.diverging) {
        g.sup = std::numeric_limits<double>::infinity();
        g.argmax_t = g.rows.back().t;
    }
    return g;
}

}  // namespace

namespace kernels {

std::vector<GrowthRow> growth_rows_serial(const SemigroupFamily& fam, const FockVector& f,
                                          const GrowthProbe& probe) {
    probe.validate();
    std::vector<GrowthRow> rows;
    rows.reserve(probe.t_grid.size());
    for (double t : probe.t_grid) rows.push_back(growth_row(fam, f, probe.omega, t));
    return rows;
}

std::vector<GrowthRow> growth_rows_parallel(const SemigroupFamily& fam, const FockVector& f,
                                            const GrowthProbe& probe) {
    probe.validate();
    const int n = static_cast<int>(probe.t_grid.size());
    std::vector<GrowthRow> rows(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i)
        rows[static_cast<std::size_t>(i)] = growth_row(fam, f, probe.omega, probe.t_grid[static_cast<std::size_t>(i)]);
    return rows;
}

}  // namespace kernels

GrowthEstimate n_omega_estimate(const SemigroupFamily& fam, const FockVector& f, const GrowthProbe& probe) {
    return summarize(kernels::growth_rows_parallel(fam, f, probe));
}

double norm_W_one_closed_form(const SemigroupFamily& fam, double t) {
    const WCOParams p = family_eval(fam, t);
    return std::abs(p.C) * std::exp(std::norm(p.D) / 2.0);
}

FockVector laplace_resolvent(const SemigroupFamily& fam, Complex lambda, const FockVector& f, double omega,
                             const LaplaceConfig& cfg) {
    if (!(lambda.real() > omega))
        throw NumericalError("laplace_resolvent: requires Re(lambda) > omega");
    const GrowthEstimate g = n_omega_estimate(fam, f, GrowthProbe::standard(omega));
    if (g.diverging)
        throw NumericalError("laplace_resolvent: e^{-omega t} ||W(t) f|| diverges on the growth probe; "
                             "f is not in the growth class for this omega");
    if (g.sup == 0.0) return FockVector::zero(f.dim());
    // e^{(omega - Re lambda) T} N_omega < tail_tol
    const double horizon = std::max(1.0, std::log(g.sup / cfg.tail_tol) / (lambda.real() - omega));
    auto integrand = [&](double t) -> Vector {
        return std::exp(-lambda * t) * apply_wco(family_eval(fam, t), f).as_normalized();
    };
    const VectorQuadratureResult r = integrate_vector(integrand, 0.0, horizon, cfg.quad, true);
    return FockVector(r.value);
}

bool family_is_bounded(const SemigroupFamily& fam, double tol) {
    const Complex a = fam.conjugation().a;
    if (fam.is_translation()) {
        const Complex E = fam.translation().E;
        return std::abs(std::conj(E) + a * E) <= tol;
    }
    const auto& d = fam.dilation();
    if (d.ell.real() < -tol) return true;
    if (std::abs(d.ell.real()) <= tol) return std::abs(a * d.G + fam.conjugation().b - std::conj(d.G)) <= tol;
    return false;
}

}  // namespace fockcs
