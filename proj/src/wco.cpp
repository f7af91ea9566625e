#include "fockcs/wco.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <omp.h>

#include "fockcs/conjugation.hpp"

namespace fockcs {
namespace {

// Terms are evaluated in extended precision: for |B|, |D| near 1 the sum
// cancels terms far larger than the result.
using Real = long double;
using RComplex = std::complex<Real>;

struct LogPolar {
    Real log_abs;  // -inf for zero
    Real arg;
};

LogPolar log_polar(RComplex z) {
    if (z == RComplex{}) return {-INFINITY, 0.0L};
    return {std::log(std::abs(z)), std::arg(z)};
}

Real lfact(int n) {
    static const std::vector<Real> table = [] {
        std::vector<Real> t(4097);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::lgamma(static_cast<Real>(i) + 1.0L);
        return t;
    }();
    return n < static_cast<int>(table.size()) ? table[static_cast<std::size_t>(n)]
                                              : std::lgamma(static_cast<Real>(n) + 1.0L);
}

RComplex widen(Complex z) { return {z.real(), z.imag()}; }

// Precomputed per-parameter data shared by all entries of one matrix.
struct EntryContext {
    RComplex A, B, D;
    LogPolar a, b, c, d;
    RComplex step;  // A / (B D): ratio of consecutive terms up to the integer factors

    explicit EntryContext(const WCOParams& p)
        : A(widen(p.A)), B(widen(p.B)), D(widen(p.D)),
          a(log_polar(A)), b(log_polar(B)), c(log_polar(widen(p.C))), d(log_polar(D)),
          step(B == RComplex{} || D == RComplex{} ? RComplex{} : A / (B * D)) {}

    // log-magnitude and phase of term j
    LogPolar term(int n, int k, int j) const {
        const int pb = k - j, pd = n - j;
        Real lm = c.log_abs + 0.5L * (lfact(n) - lfact(k)) + lfact(k) - lfact(j) - lfact(pb) - lfact(pd);
        Real ph = c.arg;
        if (j > 0) lm += j * a.log_abs, ph += j * a.arg;
        if (pb > 0) lm += pb * b.log_abs, ph += pb * b.arg;
        if (pd > 0) lm += pd * d.log_abs, ph += pd * d.arg;
        return {lm, ph};
    }

    Complex entry(int n, int k, double log_scale) const {
        if (c.log_abs == -INFINITY) return {};
        // zero symbols leave a single admissible j
        int lo = 0, hi = std::min(n, k);
        if (b.log_abs == -INFINITY) lo = std::max(lo, k);
        if (d.log_abs == -INFINITY) lo = std::max(lo, n);
        if (a.log_abs == -INFINITY) hi = 0;
        if (lo > hi) return {};

        const LogPolar t0 = term(n, k, lo);
        if (lo == hi) {
            const RComplex v = std::polar(std::exp(t0.log_abs + log_scale), t0.arg);
            return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
        }
        // lo < hi forces A, B, D != 0 and lo = 0: walk the terms by their ratio
        // (k-j+1)(n-j+1)/j * A/(BD), keeping sum and term on a shared scale exp(L).
        Real L = t0.log_abs;
        const Real sr = step.real(), si = step.imag();
        Real mr = std::cos(t0.arg), mi = std::sin(t0.arg);
        Real ur = mr, ui = mi;
        for (int j = 1; j <= hi; ++j) {
            const Real f = static_cast<Real>(k - j + 1) * static_cast<Real>(n - j + 1) / static_cast<Real>(j);
            const Real fr = f * sr, fi = f * si;
            const Real nr = mr * fr - mi * fi;
            mi = mr * fi + mi * fr;
            mr = nr;
            ur += mr;
            ui += mi;
            const Real big = std::max({std::abs(mr), std::abs(mi), std::abs(ur), std::abs(ui)});
            if (big > 1e256L || (big < 1e-256L && big > 0.0L)) {
                L += std::log(big);
                mr /= big, mi /= big, ur /= big, ui /= big;
            }
        }
        const RComplex sum(ur, ui);
        const Real mag = std::abs(sum);
        if (mag == 0.0L) return {};
        const RComplex v = std::polar(std::exp(L + log_scale + std::log(mag)), std::arg(sum));
        return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
    }
};

void fill_column(const EntryContext& ctx, Matrix& m, int k) {
    const int dim = static_cast<int>(m.rows());
    for (int n = 0; n < dim; ++n) m(n, k) = ctx.entry(n, k, 0.0);
}

void require_finite(const Matrix& m) {
    if (!m.allFinite()) throw NumericalError("wco_matrix: entry overflow (non-finite value)");
}

}  // namespace

Complex wco_entry(const WCOParams& p, int n, int k, double log_scale) {
    if (n < 0 || k < 0) throw InputError("wco_entry: negative index");
    return EntryContext(p).entry(n, k, log_scale);
}

namespace kernels {

Matrix wco_matrix_serial(const WCOParams& p, int dim) {
    if (dim < 1) throw InputError("wco_matrix: dim must be >= 1");
    const EntryContext ctx(p);
    Matrix m(dim, dim);
    for (int k = 0; k < dim; ++k) fill_column(ctx, m, k);
    require_finite(m);
    return m;
}

Matrix wco_matrix_parallel(const WCOParams& p, int dim) {
    if (dim < 1) throw InputError("wco_matrix: dim must be >= 1");
    const EntryContext ctx(p);
    Matrix m(dim, dim);
    // column cost grows with k, so hand out columns dynamically
#pragma omp parallel for schedule(dynamic, 4)
    for (int k = 0; k < dim; ++k) fill_column(ctx, m, k);
    require_finite(m);
    return m;
}

}  // namespace kernels

Matrix wco_matrix(const WCOParams& p, int dim) {
    return kernels::wco_matrix_parallel(p, dim);
}

FockVector apply_wco(const WCOParams& p, const FockVector& f) {
    const Vector x = f.as_normalized();
    const Eigen::Index dim = x.size();
    Vector g(dim);
    // g_0 = C exp(Dz): normalized coefficients C D^n / sqrt(n!)
    Complex term = p.C;
    for (Eigen::Index n = 0; n < dim; ++n) {
        g(n) = term;
        term *= p.D / std::sqrt(static_cast<double>(n + 1));
    }
    Vector out = Vector::Zero(dim);
    Vector next(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        if (x(k) != Complex{}) out += x(k) * g;
        if (k + 1 == dim) break;
        // (Az + B) g, with z e^_n = sqrt(n+1) e^_{n+1}
        const double inv = 1.0 / std::sqrt(static_cast<double>(k + 1));
        next(0) = p.B * g(0);
        for (Eigen::Index n = 1; n < dim; ++n)
            next(n) = p.A * std::sqrt(static_cast<double>(n)) * g(n - 1) + p.B * g(n);
        g = next * inv;
    }
    if (!out.allFinite()) throw NumericalError("apply_wco: overflow");
    return FockVector(out);
}

BoundednessVerdict is_bounded(const WCOParams& p, double tol) {
    const double modA = std::abs(p.A);
    if (modA < 1.0 - tol) return {true, "|A| < 1"};
    if (modA > 1.0 + tol) return {false, "|A| > 1"};
    const double defect = std::abs(p.D + p.A * std::conj(p.B));
    if (defect <= tol) return {true, "|A| = 1 and D + A conj(B) = 0"};
    return {false, "|A| = 1 but D + A conj(B) != 0"};
}

SelfadjointSymbolVerdict is_c_selfadjoint_symbols(const WCOParams& p, const ConjugationParams& q,
                                                  double tol) {
    SelfadjointSymbolVerdict v;
    v.mismatch = p.D - (q.a * p.B - q.b * p.A + q.b);
    v.symbol_condition = p.C != Complex{} && std::abs(v.mismatch) <= tol;
    return v;
}

WCOParams compose(const WCOParams& p2, const WCOParams& p1) {
    WCOParams r;
    r.A = p1.A * p2.A;
    r.B = p1.A * p2.B + p1.B;
    r.C = p2.C * p1.C * std::exp(p1.D * p2.B);
    r.D = p2.D + p1.D * p2.A;
    return r;
}

double truncated_operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

}  // namespace fockcs
