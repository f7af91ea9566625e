#include "fockcs/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "fockcs/conjugation.hpp"
#include "fockcs/evolution.hpp"
#include "fockcs/generator.hpp"
#include "fockcs/rng.hpp"
#include "fockcs/semigroup.hpp"
#include "fockcs/verify.hpp"
#include "fockcs/wco.hpp"

namespace fockcs {

namespace {

struct KindName {
    ScenarioKind kind;
    const char* name;
};

constexpr KindName kKinds[] = {
    {ScenarioKind::conjugation_check, "conjugation-check"},
    {ScenarioKind::wco, "wco"},
    {ScenarioKind::semigroup, "semigroup"},
    {ScenarioKind::generator, "generator"},
    {ScenarioKind::spectrum, "spectrum"},
    {ScenarioKind::evolution, "evolution"},
    {ScenarioKind::full_verify, "full-verify"},
};

const std::string kParams = "$.params";

// ---------------------------------------------------------------------------
// parameter parsing (shared by validation and execution)

ConjugationParams conjugation_param(const json& p, const std::string& path) {
    const ConjugationParams c = conjugation_from_json(p, path);
    try {
        c.validate();
    } catch (const ConstraintError& e) {
        throw InputError(path + ": " + e.what());
    }
    return c;
}

std::vector<double> number_list(const json& p, const std::string& key, std::vector<double> fallback,
                                bool nonnegative) {
    if (!p.contains(key)) return fallback;
    const std::string path = kParams + "." + key;
    const json& a = p.at(key);
    if (!a.is_array() || a.empty()) throw InputError(path + ": expected a non-empty array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string ip = path + "[" + std::to_string(i) + "]";
        if (!a[i].is_number()) throw InputError(ip + ": expected a number");
        const double v = a[i].get<double>();
        if (!std::isfinite(v)) throw InputError(ip + ": must be finite");
        if (nonnegative && v < 0.0) throw InputError(ip + ": must be >= 0");
        out.push_back(v);
    }
    return out;
}

int bounded_int(const json& p, const std::string& key, int fallback, int lo, int hi) {
    const int v = int_field_or(p, key, kParams, fallback);
    if (v < lo || v > hi)
        throw InputError(kParams + "." + key + ": must be in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                         "]");
    return v;
}

/// Optional Fock vector, padded with zeros (or rejected if longer) to `dim`.
FockVector vector_param(const json& p, int dim, int default_k) {
    if (!p.contains("vector")) return FockVector::basis_vector(default_k, dim);
    const FockVector f = fock_vector_from_json(p.at("vector"), kParams + ".vector").to_normalized();
    if (f.dim() > dim)
        throw InputError(kParams + ".vector: has " + std::to_string(f.dim()) + " coefficients, truncation is " +
                         std::to_string(dim));
    std::vector<Complex> c(f.coeffs().begin(), f.coeffs().end());
    c.resize(static_cast<std::size_t>(dim), Complex{});
    return FockVector(std::move(c));
}

SemigroupFamily family_param(const json& p) {
    return family_from_json(require_field(p, "family", kParams), kParams + ".family");
}

// Scalar coefficient function for the Bagchi Hamiltonian: a number,
// {"poly": [c0, c1, ...]} or {"sin": {"amp", "freq", "phase", "offset"}}.
std::function<double(double)> coefficient_param(const json& p, const std::string& key) {
    const std::string path = kParams + "." + key;
    const json& v = require_field(p, key, kParams);
    if (v.is_number()) {
        const double c = v.get<double>();
        return [c](double) { return c; };
    }
    if (v.is_object() && v.contains("poly")) {
        const json& a = v.at("poly");
        if (!a.is_array() || a.empty()) throw InputError(path + ".poly: expected a non-empty array");
        std::vector<double> c;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!a[i].is_number()) throw InputError(path + ".poly[" + std::to_string(i) + "]: expected a number");
            c.push_back(a[i].get<double>());
        }
        return [c](double t) {
            double acc = 0.0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
            return acc;
        };
    }
    if (v.is_object() && v.contains("sin")) {
        const json& s = v.at("sin");
        const std::string sp = path + ".sin";
        const double amp = number_field_or(s, "amp", sp, 1.0);
        const double freq = number_field_or(s, "freq", sp, 1.0);
        const double phase = number_field_or(s, "phase", sp, 0.0);
        const double offset = number_field_or(s, "offset", sp, 0.0);
        return [=](double t) { return offset + amp * std::sin(freq * t + phase); };
    }
    throw InputError(path + ": expected a number, {\"poly\": [...]} or {\"sin\": {...}}");
}

struct EvolutionParams {
    std::string type;
    TimeDependentOperator B;
    double s = 0.0;
    std::vector<double> times;
    double rel_tol = 1e-10;
    std::optional<Matrix> conj_unitary;
};

TimeDependentOperator table_operator(const json& p) {
    const std::vector<double> times = number_list(p, "times", {}, false);
    if (times.empty()) throw InputError(kParams + ".times: missing required field");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw InputError(kParams + ".times: must be strictly increasing");
    const json& mats = require_field(p, "matrices", kParams);
    if (!mats.is_array() || mats.size() != times.size())
        throw InputError(kParams + ".matrices: expected one matrix per entry of times");
    std::vector<Matrix> ms;
    for (std::size_t i = 0; i < mats.size(); ++i) {
        ms.push_back(matrix_from_json(mats[i], kParams + ".matrices[" + std::to_string(i) + "]"));
        if (ms.back().rows() != ms.front().rows())
            throw InputError(kParams + ".matrices[" + std::to_string(i) + "]: dimension mismatch");
    }
    const int dim = static_cast<int>(ms.front().rows());
    // piecewise linear, constant outside [times.front(), times.back()]
    return {dim, [times, ms](double t) -> Matrix {
                if (t <= times.front()) return ms.front();
                if (t >= times.back()) return ms.back();
                const auto hi = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), t) -
                                                         times.begin());
                const double w = (t - times[hi - 1]) / (times[hi] - times[hi - 1]);
                return (1.0 - w) * ms[hi - 1] + w * ms[hi];
            },
            times};
}

EvolutionParams evolution_param(const json& p) {
    EvolutionParams e;
    const json& type = require_field(p, "B", kParams);
    if (!type.is_string()) throw InputError(kParams + ".B: expected \"bagchi\", \"constant\" or \"table\"");
    e.type = type.get<std::string>();
    if (e.type == "bagchi") {
        BagchiParams b;
        b.nu = number_field_or(p, "nu", kParams, 0.0);
        b.kappa = coefficient_param(p, "kappa");
        b.lam = coefficient_param(p, "lambda");
        e.B = bagchi_hamiltonian(b);
        e.conj_unitary = Matrix::Identity(2, 2);
    } else if (e.type == "constant") {
        e.B = constant_operator(matrix_from_json(require_field(p, "matrix", kParams), kParams + ".matrix"));
    } else if (e.type == "table") {
        e.B = table_operator(p);
    } else {
        throw InputError(kParams + ".B: expected \"bagchi\", \"constant\" or \"table\"");
    }
    if (p.contains("dim")) {
        const int dim = int_field_or(p, "dim", kParams, 0);
        if (dim != e.B.dim)
            throw InputError(kParams + ".dim: " + std::to_string(dim) + " does not match the operator dimension " +
                             std::to_string(e.B.dim));
    }
    e.s = number_field_or(p, "s", kParams, 0.0);
    e.times = number_list(p, "t", {0.25, 0.5, 0.75, 1.0}, false);
    e.rel_tol = number_field_or(p, "rel_tol", kParams, 1e-10);
    if (!(e.rel_tol > 0.0 && e.rel_tol < 1e-2)) throw InputError(kParams + ".rel_tol: must be in (0, 1e-2)");
    if (p.contains("conjugation_unitary")) {
        e.conj_unitary = matrix_from_json(p.at("conjugation_unitary"), kParams + ".conjugation_unitary");
        if (e.conj_unitary->rows() != e.B.dim)
            throw InputError(kParams + ".conjugation_unitary: dimension mismatch");
        try {
            require_conjugation_unitary(*e.conj_unitary);
        } catch (const InputError& err) {
            throw InputError(kParams + ".conjugation_unitary: " + err.what());
        }
    }
    const Matrix b0 = e.B.eval(e.s);
    if (!b0.allFinite()) throw InputError(kParams + ": B(s) has non-finite entries");
    return e;
}

// ---------------------------------------------------------------------------
// kind runners

CheckRecord sensitive(CheckRecord r) {
    r.truncation_sensitive = true;
    return r;
}

const Complex kZSamples[] = {0.0, 1.0, -1.0, kI, -kI, Complex(2.0, 1.0)};

void run_conjugation(const Scenario& s, Report& rep) {
    const json& p = s.params;
    const ConjugationParams c = conjugation_param(require_field(p, "conjugation", kParams), kParams + ".conjugation");
    const int N = s.truncation.dim;
    const int degree = bounded_int(p, "degree", std::min(8, N - 1), 0, N - 1);
    const int samples = bounded_int(p, "samples", 8, 1, 10000);
    SplitMix64 rng(static_cast<std::uint64_t>(bounded_int(p, "seed", 7, 0, std::numeric_limits<int>::max())));

    const std::string anchor = "conjugation axioms: C^2 = I and <Cf,Cg> = <g,f>";
    const bool exact = std::abs(c.b) == 0.0;
    const double fallback = exact ? 1e-12 : 1e-8;
    const auto op = conjugation_matrix(c, N);

    const auto inv = check_involution(op, degree);
    CheckRecord r = check_at_most("involution", anchor, *std::max_element(inv.begin(), inv.end()),
                                  s.truncation.tolerance("involution", fallback));
    r.note = "degrees <= " + std::to_string(degree);
    rep.add(exact ? r : sensitive(r));

    double iso = 0.0;
    for (int i = 0; i < samples; ++i) {
        const FockVector f(random_low_degree_vector(rng, N, degree));
        const FockVector g(random_low_degree_vector(rng, N, degree));
        iso = std::max(iso, std::abs(check_isometry(op, f, g)) / (norm(f) * norm(g)));
    }
    r = check_at_most("isometry", anchor, iso, s.truncation.tolerance("isometry", fallback));
    rep.add(exact ? r : sensitive(r));

    rep.add(info("matrix.symmetry", "conjugation matrix is symmetric", max_abs(op.M - op.M.transpose())));
    rep.artifacts["conjugation"] = to_json(c);
}

void run_wco(const Scenario& s, Report& rep) {
    const json& p = s.params;
    const WCOParams w = wco_from_json(require_field(p, "symbols", kParams), kParams + ".symbols");
    const int N = s.truncation.dim;
    const std::string anchor = "boundedness of W: |A|<1, or |A|=1 and D + A conj(B) = 0";

    const auto verdict = is_bounded(w);
    CheckRecord v = info("bounded", anchor, verdict.bounded ? 1.0 : 0.0, verdict.reason);
    rep.add(v);

    const int dims[] = {std::max(2, N / 4), std::max(2, N / 2), N};
    double n[3];
    for (int j = 0; j < 3; ++j) n[j] = truncated_operator_norm(wco_matrix(w, dims[j]));
    const bool agree = verdict.bounded ? n[2] <= 1.01 * n[1] : (n[1] > 1.01 * n[0] && n[2] > 1.01 * n[1]);
    rep.add(sensitive(check_true("norm-probe", anchor, agree,
                                 "norms " + format_double(n[0]) + ", " + format_double(n[1]) + ", " +
                                     format_double(n[2]))));

    if (p.contains("conjugation")) {
        const ConjugationParams c = conjugation_param(p.at("conjugation"), kParams + ".conjugation");
        const auto sym = is_c_selfadjoint_symbols(w, c);
        rep.add(info("symbol-condition", "C-selfadjoint symbols D = aB - bA + b", std::abs(sym.mismatch),
                     sym.symbol_condition ? "holds; also needs the maximal domain" : "fails"));
        if (sym.symbol_condition && verdict.bounded)
            rep.add(sensitive(check_at_most("c-symmetry", "C-symmetric weighted composition: W M = M W^T",
                                            check_matrix_c_symmetry(wco_matrix(w, N), conjugation_matrix(c, N)),
                                            s.truncation.tolerance("c_symmetry", 1e-8))));
    }
    if (p.contains("vector")) rep.artifacts["image"] = to_json(apply_wco(w, vector_param(p, N, 0)));
    rep.artifacts["symbols"] = to_json(w);
}

std::vector<GrowthRow> run_semigroup(const Scenario& s, Report& rep) {
    const json& p = s.params;
    const SemigroupFamily fam = family_param(p);
    const int N = s.truncation.dim;
    const auto ts = number_list(p, "t", {0.1, 0.25, 0.5, 1.0}, true);
    const double omega = number_field_or(p, "omega", kParams, 0.0);
    const FockVector f = vector_param(p, N, 0);

    double flow = 0.0, cocycle = 0.0, symbol = 0.0;
    for (double t : ts) {
        for (double u : ts) {
            flow = std::max(flow, check_semiflow(fam, t, u, kZSamples));
            cocycle = std::max(cocycle, check_semicocycle(fam, t, u, kZSamples));
        }
        symbol = std::max(symbol, std::abs(is_c_selfadjoint_symbols(family_eval(fam, t), fam.conjugation()).mismatch));
    }
    rep.add(check_at_most("semiflow", "semiflow zeta_{t+s} = zeta_t o zeta_s", flow,
                          s.truncation.tolerance("semiflow", 1e-10)));
    rep.add(check_at_most("semicocycle", "semicocycle xi_{t+s} = xi_t (xi_s o zeta_t)", cocycle,
                          s.truncation.tolerance("semicocycle", 1e-10)));
    rep.add(check_at_most("symbol-condition", "symbol condition D(t) = a B(t) - b A(t) + b", symbol, 1e-12));

    double law = 0.0;
    for (double t : ts)
        for (double u : ts)
            for (int k = 0; k <= std::min(6, N - 1); ++k) law = std::max(law, check_semigroup_law(fam, t, u, k, N));
    rep.add(sensitive(check_at_most("semigroup-law", "semigroup law W(t+s) = W(t) W(s) on monomials", law,
                                    s.truncation.tolerance("semigroup_law", 1e-8))));

    rep.add(info("bounded", "bounded C-selfadjoint semigroup", family_is_bounded(fam) ? 1.0 : 0.0));
    const auto est = n_omega_estimate(fam, f, GrowthProbe::standard(omega));
    rep.add(info("growth.sup", "growth bound sup e^{-omega t} ||W(t) f||", est.sup,
                 "argmax t = " + format_double(est.argmax_t)));
    rep.add(info("growth.diverging", "growth bound sup e^{-omega t} ||W(t) f||", est.diverging ? 1.0 : 0.0));
    rep.artifacts["family"] = to_json(fam);
    return est.rows;
}

void run_generator(const Scenario& s, Report& rep) {
    const json& p = s.params;
    const SemigroupFamily fam = family_param(p);
    const int N = s.truncation.dim;
    const int k_max = bounded_int(p, "k_max", std::min(4, N - 2), 0, N - 2);
    const auto ts = number_list(p, "t", {0.1, 0.25, 0.5}, true);

    const std::string fd = "generator = derivative of W(t) at t = 0";
    const auto steps = default_fd_steps();
    for (int k = 0; k <= k_max; ++k) {
        const std::string base = "fd.k" + std::to_string(k);
        rep.add(sensitive(check_within(base + ".forward", fd, check_generator_fd(fam, k, N, steps).slope, 0.9, 1.1)));
        rep.add(sensitive(check_within(base + ".central", fd,
                                       check_generator_fd(fam, k, N, steps, DifferenceScheme::central).slope, 1.9,
                                       2.1)));
    }

    const GeneratorMatrix G = generator_matrix(fam, N);
    const Matrix Q = G.dense();
    const int head = std::min(20, N);
    double worst = 0.0;
    for (double t : ts) {
        const Matrix E = matrix_exponential(Q, t);
        const Matrix W = semigroup_matrix(fam, t, N);
        for (int k = 0; k <= std::min(k_max + 1, N - 1); ++k)
            worst = std::max(worst, (E.col(k) - W.col(k)).head(head).norm());
    }
    rep.add(sensitive(check_at_most("expm", "W(t) = exp(t Q) on low-degree coefficients", worst,
                                    s.truncation.tolerance("expm", 1e-6))));

    rep.add(check_at_most("c-symmetry", "C-selfadjoint generator: Q M = M Q^T",
                          check_matrix_c_symmetry(Q, conjugation_matrix(fam.conjugation(), N)),
                          s.truncation.tolerance("c_symmetry", 1e-12)));
    rep.add(info("dissipativity-margin", "dissipative: Re <Qz, z> <= 0", dissipativity_margin(Q)));

    json g{{"sub", json::array()}, {"diag", json::array()}, {"super", json::array()}};
    for (Complex z : G.sub) g["sub"].push_back(to_json(z));
    for (Complex z : G.diag) g["diag"].push_back(to_json(z));
    for (Complex z : G.super) g["super"].push_back(to_json(z));
    rep.artifacts["generator"] = g;
}

void run_spectrum(const Scenario& s, Report& rep) {
    const json& p = s.params;
    const SemigroupFamily fam = family_param(p);
    const int N = s.truncation.dim;

    if (fam.is_translation()) {
        const std::string anchor = "translation generator has empty point spectrum";
        std::vector<Complex> etas;
        if (p.contains("eta")) {
            const json& a = p.at("eta");
            if (!a.is_array()) throw InputError(kParams + ".eta: expected an array of [re, im]");
            for (std::size_t i = 0; i < a.size(); ++i)
                etas.push_back(complex_from_json(a[i], kParams + ".eta[" + std::to_string(i) + "]"));
        } else {
            etas.push_back(Complex(1.0, 1.0));
        }
        const int dims[] = {16, 32, 64};
        for (std::size_t i = 0; i < etas.size(); ++i) {
            const auto cert = check_empty_point_spectrum(fam, etas[i], dims);
            std::string note = "S_2N/S_N at N=16,32,64:";
            for (double r : cert.ratios) note += " " + format_double(r);
            CheckRecord r = check_at_least("empty-spectrum.eta" + std::to_string(i), anchor,
                                           *std::min_element(cert.ratios.begin(), cert.ratios.end()), 10.0);
            r.note = std::move(note);
            rep.add(std::move(r));
        }
        return;
    }

    const int k_max = bounded_int(p, "k_max", 5, 0, N - 1);
    const auto sr = spectrum_report(fam, k_max, N);
    const std::string anchor = "eigenfunctions (z - G)^m e^{beta z} with eigenvalue H - l beta G + m l";
    for (int m = 0; m <= k_max; ++m)
        rep.add(sensitive(check_at_most("eigen-residual.m" + std::to_string(m), anchor, sr.residuals[m],
                                        s.truncation.tolerance("eigen_residual", 1e-10))));
    if (std::abs(fam.beta()) == 0.0) {
        // beta = 0: the truncation is triangular and must carry the lattice exactly
        auto predicted = point_spectrum_predicted(fam, N - 1);
        std::sort(predicted.begin(), predicted.end(), [](Complex x, Complex y) {
            return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
        });
        double worst = 0.0;
        for (std::size_t k = 0; k < predicted.size(); ++k)
            worst = std::max(worst, std::abs(predicted[k] - sr.truncated_eigs[k]));
        rep.add(check_at_most("lattice", "point spectrum H + k l for beta = 0", worst,
                              s.truncation.tolerance("lattice", 1e-12)));
    }
    rep.artifacts["spectrum"] = to_json(sr);
}

std::vector<EvolutionOperator> run_evolution(const Scenario& s, const RunOptions& opt, Report& rep) {
    const EvolutionParams e = evolution_param(s.params);
    const std::string axioms = "evolution family U(t,t) = I, U(t,r) U(r,s) = U(t,s)";
    const std::string stone = "C-symmetric evolution family <=> C-symmetric B(t)";

    const double t_end = e.times.back();
    const auto ax = check_evolution_axioms(e.B, e.s, 0.5 * (e.s + t_end), t_end, e.rel_tol);
    rep.add(check_at_most("composition", axioms, std::max(ax.identity, ax.composition), 10.0 * e.rel_tol));

    if (e.conj_unitary) {
        std::vector<double> grid{e.s};
        grid.insert(grid.end(), e.times.begin(), e.times.end());
        const auto res = check_nonauto_stone(e.B, *e.conj_unitary, grid);
        const double worst = *std::max_element(res.begin(), res.end());
        if (e.type == "bagchi")
            rep.add(check_at_most("nonauto-stone", stone, worst, std::numeric_limits<double>::epsilon()));
        else
            rep.add(info("nonauto-stone", stone, worst));
        rep.add(info("evolution-c-symmetry", stone,
                     check_evolution_c_symmetry(e.B, *e.conj_unitary, e.s, t_end, e.rel_tol)));
    }

    std::vector<std::pair<double, double>> pairs;
    for (double t : e.times) pairs.emplace_back(e.s, t);
    auto series = opt.parallel ? kernels::evolve_many_parallel(e.B, pairs, e.rel_tol)
                               : kernels::evolve_many_serial(e.B, pairs, e.rel_tol);
    int steps = 0;
    for (const auto& u : series) steps += u.stats.accepted;
    rep.add(info("integrator.accepted-steps", "plumbing", steps));
    rep.artifacts["final"] = matrix_to_json(series.back().matrix);
    return series;
}

}  // namespace

std::string to_string(ScenarioKind k) {
    for (const auto& x : kKinds)
        if (x.kind == k) return x.name;
    return "full-verify";
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
    for (const auto& x : kKinds)
        if (s == x.name) return x.kind;
    std::string all;
    for (const auto& x : kKinds) all += std::string(all.empty() ? "" : ", ") + x.name;
    throw InputError("unknown scenario kind \"" + s + "\" (expected one of " + all + ")");
}

Scenario parse_scenario(const json& j) {
    if (!j.is_object()) throw InputError("$: expected a JSON object");
    Scenario s;
    const json& name = require_field(j, "name", "$");
    if (!name.is_string() || name.get<std::string>().empty()) throw InputError("$.name: expected a non-empty string");
    s.name = name.get<std::string>();

    const json& kind = require_field(j, "kind", "$");
    if (!kind.is_string()) throw InputError("$.kind: expected a string");
    try {
        s.kind = scenario_kind_from_string(kind.get<std::string>());
    } catch (const InputError& e) {
        throw InputError(std::string("$.kind: ") + e.what());
    }

    if (j.contains("params")) {
        if (!j.at("params").is_object()) throw InputError("$.params: expected an object");
        s.params = j.at("params");
    }

    if (j.contains("truncation")) {
        const json& t = j.at("truncation");
        if (!t.is_object()) throw InputError("$.truncation: expected an object");
        s.truncation.dim = int_field_or(t, "dim", "$.truncation", s.truncation.dim);
        if (t.contains("tolerances")) {
            const json& tol = t.at("tolerances");
            if (!tol.is_object()) throw InputError("$.truncation.tolerances: expected an object");
            for (const auto& [key, v] : tol.items()) {
                if (!v.is_number()) throw InputError("$.truncation.tolerances." + key + ": expected a number");
                s.truncation.tolerances[key] = v.get<double>();
            }
        }
        try {
            s.truncation.validate();
        } catch (const InputError& e) {
            throw InputError(std::string("$.truncation: ") + e.what());
        }
    }

    if (j.contains("output")) {
        const json& o = j.at("output");
        if (!o.is_object()) throw InputError("$.output: expected an object");
        if (o.contains("path")) {
            if (!o.at("path").is_string()) throw InputError("$.output.path: expected a string");
            s.output.path = o.at("path").get<std::string>();
        }
        if (o.contains("format")) {
            const json& f = o.at("format");
            if (f == "json")
                s.output.format = OutputFormat::json;
            else if (f == "csv")
                s.output.format = OutputFormat::csv;
            else
                throw InputError("$.output.format: expected \"json\" or \"csv\"");
        }
    }
    validate_scenario(s);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": malformed JSON: " + e.what());
    }
    return parse_scenario(j);
}

void validate_scenario(const Scenario& s) {
    const json& p = s.params;
    const int N = s.truncation.dim;
    switch (s.kind) {
        case ScenarioKind::conjugation_check:
            conjugation_param(require_field(p, "conjugation", kParams), kParams + ".conjugation");
            bounded_int(p, "degree", std::min(8, N - 1), 0, N - 1);
            bounded_int(p, "samples", 8, 1, 10000);
            bounded_int(p, "seed", 7, 0, std::numeric_limits<int>::max());
            break;
        case ScenarioKind::wco:
            wco_from_json(require_field(p, "symbols", kParams), kParams + ".symbols");
            if (p.contains("conjugation")) conjugation_param(p.at("conjugation"), kParams + ".conjugation");
            if (p.contains("vector")) vector_param(p, N, 0);
            break;
        case ScenarioKind::semigroup:
            family_param(p);
            number_list(p, "t", {}, true);
            number_field_or(p, "omega", kParams, 0.0);
            if (p.contains("vector")) vector_param(p, N, 0);
            break;
        case ScenarioKind::generator:
            family_param(p);
            if (N < 3) throw InputError("$.truncation.dim: generator checks need dim >= 3");
            bounded_int(p, "k_max", std::min(4, N - 2), 0, N - 2);
            number_list(p, "t", {}, true);
            break;
        case ScenarioKind::spectrum:
            family_param(p);
            bounded_int(p, "k_max", 5, 0, N - 1);
            break;
        case ScenarioKind::evolution:
            evolution_param(p);
            break;
        case ScenarioKind::full_verify: {
            VerifyOptions o;
            o.dim = N;
            o.validate();
            bounded_int(p, "seed", 7, 0, std::numeric_limits<int>::max());
            break;
        }
    }
}

ScenarioResult execute_scenario(const Scenario& s, const RunOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    ScenarioResult out;
    Report& rep = out.report;

    if (s.kind == ScenarioKind::full_verify) {
        VerifyOptions o;
        o.dim = s.truncation.dim;
        o.seed = static_cast<std::uint64_t>(int_field_or(s.params, "seed", kParams, 7));
        o.parallel = opt.parallel;
        rep = verify_all(o);
    } else {
        try {
            switch (s.kind) {
                case ScenarioKind::conjugation_check: run_conjugation(s, rep); break;
                case ScenarioKind::wco: run_wco(s, rep); break;
                case ScenarioKind::semigroup: out.table_csv = growth_csv(run_semigroup(s, rep)); break;
                case ScenarioKind::generator: run_generator(s, rep); break;
                case ScenarioKind::spectrum: run_spectrum(s, rep); break;
                case ScenarioKind::evolution: out.table_csv = evolution_csv(run_evolution(s, opt, rep)); break;
                case ScenarioKind::full_verify: break;
            }
        } catch (const NumericalError& e) {
            rep.add(check_true(to_string(s.kind) + ".numerical", "plumbing", false, e.what()));
        }
        if (s.truncation.dim < kCalibratedDim)
            rep.soften_truncation_failures("N=" + std::to_string(s.truncation.dim) +
                                           " is below the calibrated truncation " + std::to_string(kCalibratedDim));
    }

    rep.scenario = s.name;
    json prov = rep.provenance.is_object() ? rep.provenance : json::object();
    prov["kind"] = to_string(s.kind);
    prov["params"] = s.params;
    prov["truncation"] = {{"dim", s.truncation.dim}, {"tolerances", s.truncation.tolerances}};
    if (opt.timing)
        prov["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.provenance = std::move(prov);
    return out;
}

std::string render(const ScenarioResult& r, OutputFormat fmt) {
    if (fmt == OutputFormat::csv) return r.table_csv.empty() ? r.report.to_csv() : r.table_csv;
    return r.report.to_json().dump(2) + "\n";
}

std::optional<std::string> resolve_output_path(const Scenario& s) {
    if (!s.output.path.empty()) return s.output.path;
    const char* dir = std::getenv("FOCKCS_OUTPUT_DIR");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    const char* ext = s.output.format == OutputFormat::csv ? ".csv" : ".json";
    return (std::filesystem::path(dir) / (s.name + ext)).string();
}

int exit_code(const Report& r) { return r.any_fail() ? 2 : 0; }

}  // namespace fockcs
