#include "fockcs/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fockcs/factorial.hpp"

namespace fockcs {

Matrix GeneratorMatrix::dense() const {
    const int n = dim();
    Matrix m = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) m(k, k) = diag[static_cast<std::size_t>(k)];
    for (int k = 0; k + 1 < n; ++k) {
        m(k + 1, k) = sub[static_cast<std::size_t>(k)];
        m(k, k + 1) = super[static_cast<std::size_t>(k)];
    }
    return m;
}

Vector GeneratorMatrix::apply(const Vector& v) const {
    const int n = dim();
    if (v.size() != n) throw InputError("GeneratorMatrix::apply: dimension mismatch");
    Vector out(n);
    for (int k = 0; k < n; ++k) {
        Complex s = diag[static_cast<std::size_t>(k)] * v(k);
        if (k > 0) s += sub[static_cast<std::size_t>(k - 1)] * v(k - 1);
        if (k + 1 < n) s += super[static_cast<std::size_t>(k)] * v(k + 1);
        out(k) = s;
    }
    return out;
}

GeneratorMatrix generator_matrix(const SemigroupFamily& fam, int dim) {
    if (dim < 1) throw InputError("generator_matrix: dim must be >= 1");
    GeneratorMatrix g;
    const auto n = static_cast<std::size_t>(dim);
    g.diag.resize(n);
    g.sub.resize(n - 1);
    g.super.resize(n - 1);
    const Complex a = fam.conjugation().a;
    if (fam.is_translation()) {
        g.kind = GeneratorKind::translation;
        const auto& [E, F] = fam.translation();
        for (std::size_t k = 0; k < n; ++k) g.diag[k] = F;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double w = std::sqrt(static_cast<double>(k + 1));
            g.sub[k] = a * E * w;  // aEz
            g.super[k] = E * w;    // E d/dz
        }
    } else {
        g.kind = GeneratorKind::dilation;
        const auto& [ell, G, H] = fam.dilation();
        const Complex beta = fam.beta();
        for (std::size_t k = 0; k < n; ++k) g.diag[k] = H + ell * static_cast<double>(k);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double w = std::sqrt(static_cast<double>(k + 1));
            g.sub[k] = -ell * beta * w;
            g.super[k] = -ell * G * w;
        }
    }
    return g;
}

std::vector<double> default_fd_steps() { return {1e-2, 3e-3, 1e-3, 3e-4, 1e-4}; }

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw InputError("loglog_slope: need >= 2 matched points");
    double mx = 0, my = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

FdConvergence check_generator_fd(const SemigroupFamily& fam, int k, int dim, std::span<const double> steps,
                                 DifferenceScheme scheme) {
    if (k < 0 || k >= dim) throw InputError("check_generator_fd: k outside truncation");
    const FockVector ek = FockVector::basis_vector(k, dim);
    const Vector q = generator_matrix(fam, dim).apply(ek.as_normalized());
    FdConvergence out;
    for (double h : steps) {
        if (!(h > 0.0)) throw InputError("check_generator_fd: steps must be positive");
        Vector approx;
        if (scheme == DifferenceScheme::forward) {
            approx = (apply_wco(family_eval(fam, h), ek).as_normalized() - ek.as_normalized()) / h;
        } else {
            approx = (apply_wco(family_eval_flow(fam, h), ek).as_normalized() -
                      apply_wco(family_eval_flow(fam, -h), ek).as_normalized()) /
                     (2.0 * h);
        }
        out.steps.push_back(h);
        out.errors.push_back((approx - q).norm());
    }
    if (out.steps.size() >= 2) out.slope = loglog_slope(out.steps, out.errors);
    return out;
}

std::vector<Complex> point_spectrum_predicted(const SemigroupFamily& fam, int k_max) {
    if (fam.is_translation())
        throw InputError("point spectrum of the translation-family generator is empty");
    if (k_max < 0) throw InputError("point_spectrum_predicted: k_max must be >= 0");
    const auto& d = fam.dilation();
    const Complex base = d.H - d.ell * fam.beta() * d.G;
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) out.push_back(base + static_cast<double>(k) * d.ell);
    return out;
}

FockVector eigenfunction_coeffs(int m, Complex G, Complex beta, int dim) {
    if (m < 0 || dim < 1) throw InputError("eigenfunction_coeffs: bad degree or dimension");
    // f_m = sqrt(m!) * W_{e^{beta z}, z - G} e^_m
    const WCOParams p{1.0, -G, 1.0, beta};
    const double scale = 0.5 * log_factorial(m);
    std::vector<Complex> c(static_cast<std::size_t>(dim));
    for (int n = 0; n < dim; ++n) c[static_cast<std::size_t>(n)] = wco_entry(p, n, m, scale);
    return FockVector(std::move(c), Basis::normalized);
}

double eigen_residual(const SemigroupFamily& fam, int m, int dim) {
    const Complex lambda = point_spectrum_predicted(fam, m).back();
    const Vector f = eigenfunction_coeffs(m, fam.dilation().G, fam.beta(), dim).as_normalized();
    const Vector r = generator_matrix(fam, dim).apply(f) - lambda * f;
    return r.norm() / f.norm();
}

EmptySpectrumCertificate candidate_partial_norms(Complex alpha, Complex gamma, Complex f0,
                                                 std::span<const int> dims) {
    if (gamma == Complex{}) throw InputError("candidate_partial_norms: gamma = 0 is not a Gaussian-type candidate");
    EmptySpectrumCertificate cert;
    if (dims.empty()) return cert;
    const int top = 2 * *std::max_element(dims.begin(), dims.end());
    // normalized coefficients g_k = f_k sqrt(k!):
    // g_{k+1} = (alpha g_k + 2 gamma sqrt(k) g_{k-1}) / sqrt(k+1)
    std::vector<double> prefix(static_cast<std::size_t>(top) + 1, 0.0);
    Complex prev{}, cur = f0;
    for (int k = 0; k < top; ++k) {
        prefix[static_cast<std::size_t>(k) + 1] = prefix[static_cast<std::size_t>(k)] + std::norm(cur);
        const Complex next = (alpha * cur + 2.0 * gamma * std::sqrt(static_cast<double>(k)) * prev) /
                             std::sqrt(static_cast<double>(k + 1));
        prev = cur;
        cur = next;
    }
    cert.certified = true;
    for (int n : dims) {
        if (n < 1) throw InputError("candidate_partial_norms: dims must be >= 1");
        const double s = prefix[static_cast<std::size_t>(n)];
        const double s2 = prefix[static_cast<std::size_t>(2 * n)];
        cert.dims.push_back(n);
        cert.partial_norms.push_back(s);
        cert.doubled.push_back(s2);
        const double ratio = s == 0.0 ? 0.0 : s2 / s;
        cert.ratios.push_back(ratio);
        if (!(ratio >= 10.0)) cert.certified = false;
    }
    return cert;
}

EmptySpectrumCertificate check_empty_point_spectrum(const SemigroupFamily& fam, Complex eta,
                                                    std::span<const int> dims, Complex f0) {
    if (!fam.is_translation()) throw InputError("check_empty_point_spectrum: translation family required");
    const auto& [E, F] = fam.translation();
    return candidate_partial_norms((eta - F) / E, -fam.conjugation().a / 2.0, f0, dims);
}

double dissipativity_margin(const Matrix& m) {
    if (m.rows() != m.cols()) throw InputError("dissipativity_margin: square matrix required");
    if (m.size() == 0) return 0.0;
    const Matrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("dissipativity_margin: eigen-solver failed");
    return es.eigenvalues().maxCoeff();
}

double resolvent_bound_check(const Matrix& m, std::span<const double> alphas, std::span<const Vector> samples) {
    double worst = INFINITY;
    const Eigen::Index n = m.rows();
    for (double alpha : alphas) {
        if (!(alpha > 0.0)) throw InputError("resolvent_bound_check: alpha must be > 0");
        const Matrix shifted = alpha * Matrix::Identity(n, n) - m;
        for (const Vector& v : samples) {
            const double vn = v.norm();
            if (vn == 0.0) continue;
            worst = std::min(worst, (shifted * v).norm() / (alpha * vn));
        }
    }
    return worst;
}

namespace {

// Pade coefficients b_0..b_m and the 1-norm thresholds theta_m.
constexpr std::array<double, 4> kPade3{120., 60., 12., 1.};
constexpr std::array<double, 6> kPade5{30240., 15120., 3360., 420., 30., 1.};
constexpr std::array<double, 8> kPade7{17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
constexpr std::array<double, 10> kPade9{17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                                        2162160.,     110880.,     3960.,       90.,        1.};
constexpr std::array<double, 14> kPade13{64764752532480000., 32382376266240000., 7771770303897600.,
                                         1187353796428800.,  129060195264000.,   10559470521600.,
                                         670442572800.,      33522128640.,       1323241920.,
                                         40840800.,          960960.,            16380.,
                                         182.,               1.};
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <std::size_t K>
Matrix pade_low(const Matrix& a, const std::array<double, K>& b) {
    // degree m = K - 1 in {3, 5, 7, 9}: U = A sum b_{2i+1} A^{2i}, V = sum b_{2i} A^{2i}
    const Eigen::Index n = a.rows();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    Matrix pow = id;
    Matrix u = Matrix::Zero(n, n);
    Matrix v = Matrix::Zero(n, n);
    for (std::size_t i = 0; 2 * i + 1 < K; ++i) {
        v += b[2 * i] * pow;
        u += b[2 * i + 1] * pow;
        pow = pow * a2;
    }
    u = a * u;
    return (v - u).partialPivLu().solve(v + u);
}

Matrix pade13(const Matrix& a) {
    const auto& b = kPade13;
    const Eigen::Index n = a.rows();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    const Matrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Matrix matrix_exponential(const Matrix& m, double t) {
    if (m.rows() != m.cols()) throw InputError("matrix_exponential: square matrix required");
    const Matrix a = t * m;
    if (!a.allFinite()) throw InputError("matrix_exponential: non-finite entries");
    const Eigen::Index n = a.rows();
    if (n == 0) return a;
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    if (norm1 <= kTheta3) return pade_low(a, kPade3);
    if (norm1 <= kTheta5) return pade_low(a, kPade5);
    if (norm1 <= kTheta7) return pade_low(a, kPade7);
    if (norm1 <= kTheta9) return pade_low(a, kPade9);
    int s = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / kTheta13))));
    if (s > 1000) throw NumericalError("matrix_exponential: ||tM|| too large");
    Matrix r = pade13(a * std::ldexp(1.0, -s));
    for (int i = 0; i < s; ++i) r = r * r;
    if (!r.allFinite()) throw NumericalError("matrix_exponential: overflow during squaring");
    return r;
}

StoneAdjointResidual check_stone_adjoint_relation(const SemigroupFamily& fam, const ConjugationParams& conj,
                                                  int dim, int low_degree, double h) {
    if (low_degree < 0 || low_degree >= dim) throw InputError("check_stone_adjoint_relation: bad low_degree");
    const Matrix q = generator_matrix(fam, dim).dense();
    // central difference of t -> W_N(t)^H at t = 0
    const Matrix plus = wco_matrix(family_eval_flow(fam, h), dim).adjoint();
    const Matrix minus = wco_matrix(family_eval_flow(fam, -h), dim).adjoint();
    const Matrix g_adj = (plus - minus) / (2.0 * h);
    StoneAdjointResidual r;
    r.adjoint_generator = max_abs((g_adj - q.adjoint()).leftCols(low_degree + 1));
    r.c_symmetry = check_matrix_c_symmetry(q, conjugation_matrix(conj, dim));
    return r;
}

SpectrumReport spectrum_report(const SemigroupFamily& fam, int k_max, int dim) {
    SpectrumReport rep;
    if (!fam.is_translation()) {
        rep.predicted = point_spectrum_predicted(fam, k_max);
        for (int m = 0; m <= k_max; ++m) rep.residuals.push_back(eigen_residual(fam, m, dim));
    }
    Eigen::ComplexEigenSolver<Matrix> es(generator_matrix(fam, dim).dense(), false);
    if (es.info() != Eigen::Success) throw NumericalError("spectrum_report: eigen-solver failed");
    const Vector ev = es.eigenvalues();
    rep.truncated_eigs.assign(ev.data(), ev.data() + ev.size());
    std::sort(rep.truncated_eigs.begin(), rep.truncated_eigs.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return rep;
}

}  // namespace fockcs
