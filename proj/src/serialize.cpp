#include "fockcs/serialize.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace fockcs {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

const json& require_field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw InputError(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(path + "." + key + ": missing required field");
    return *it;
}

double number_field(const json& j, const std::string& key, const std::string& path) {
    const json& v = require_field(j, key, path);
    if (!v.is_number()) throw InputError(path + "." + key + ": expected a number");
    return v.get<double>();
}

double number_field_or(const json& j, const std::string& key, const std::string& path, double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return number_field(j, key, path);
}

int int_field_or(const json& j, const std::string& key, const std::string& path, int fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw InputError(path + "." + key + ": expected an integer");
    return v.get<int>();
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InputError(path + ": expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const FockVector& f) {
    json coeffs = json::array();
    for (Complex c : f.coeffs()) coeffs.push_back(to_json(c));
    return {{"basis", to_string(f.basis())}, {"coeffs", coeffs}};
}

FockVector fock_vector_from_json(const json& j, const std::string& path) {
    const json& tag = require_field(j, "basis", path);
    if (!tag.is_string()) throw InputError(path + ".basis: expected a string");
    Basis basis;
    try {
        basis = basis_from_string(tag.get<std::string>());
    } catch (const InputError& e) {
        throw InputError(path + ".basis: " + e.what());
    }
    const json& arr = require_field(j, "coeffs", path);
    if (!arr.is_array()) throw InputError(path + ".coeffs: expected an array");
    std::vector<Complex> c;
    for (std::size_t i = 0; i < arr.size(); ++i)
        c.push_back(complex_from_json(arr[i], path + ".coeffs[" + std::to_string(i) + "]"));
    return FockVector(std::move(c), basis);
}

json to_json(const ConjugationParams& p) {
    return {{"a", to_json(p.a)}, {"b", to_json(p.b)}, {"c", to_json(p.c)}};
}

ConjugationParams conjugation_from_json(const json& j, const std::string& path) {
    ConjugationParams p;
    p.a = complex_from_json(require_field(j, "a", path), path + ".a");
    p.b = complex_from_json(require_field(j, "b", path), path + ".b");
    p.c = complex_from_json(require_field(j, "c", path), path + ".c");
    return p;
}

json to_json(const WCOParams& p) {
    return {{"A", to_json(p.A)}, {"B", to_json(p.B)}, {"C", to_json(p.C)}, {"D", to_json(p.D)}};
}

WCOParams wco_from_json(const json& j, const std::string& path) {
    WCOParams p;
    p.A = complex_from_json(require_field(j, "A", path), path + ".A");
    p.B = complex_from_json(require_field(j, "B", path), path + ".B");
    p.C = complex_from_json(require_field(j, "C", path), path + ".C");
    p.D = complex_from_json(require_field(j, "D", path), path + ".D");
    return p;
}

json to_json(const SemigroupFamily& f) {
    json j;
    if (f.is_translation()) {
        j["variant"] = "translation";
        j["E"] = to_json(f.translation().E);
        j["F"] = to_json(f.translation().F);
    } else {
        j["variant"] = "dilation";
        j["ell"] = to_json(f.dilation().ell);
        j["G"] = to_json(f.dilation().G);
        j["H"] = to_json(f.dilation().H);
    }
    j["conjugation"] = to_json(f.conjugation());
    return j;
}

SemigroupFamily family_from_json(const json& j, const std::string& path) {
    const json& v = require_field(j, "variant", path);
    if (!v.is_string()) throw InputError(path + ".variant: expected a string");
    const std::string variant = v.get<std::string>();
    const ConjugationParams conj = conjugation_from_json(require_field(j, "conjugation", path), path + ".conjugation");
    auto opt = [&](const char* key) {
        return j.contains(key) ? complex_from_json(j.at(key), path + "." + key) : Complex{};
    };
    try {
        if (variant == "translation") {
            return SemigroupFamily(Translation{complex_from_json(require_field(j, "E", path), path + ".E"), opt("F")},
                                   conj);
        }
        if (variant == "dilation") {
            return SemigroupFamily(
                Dilation{complex_from_json(require_field(j, "ell", path), path + ".ell"), opt("G"), opt("H")}, conj);
        }
    } catch (const ConstraintError& e) {
        throw InputError(path + ": " + e.what());
    }
    throw InputError(path + ".variant: expected \"translation\" or \"dilation\"");
}

json to_json(const SpectrumReport& r) {
    json pred = json::array(), eigs = json::array();
    for (Complex z : r.predicted) pred.push_back(to_json(z));
    for (Complex z : r.truncated_eigs) eigs.push_back(to_json(z));
    return {{"predicted", pred}, {"residuals", r.residuals}, {"truncated_eigs", eigs}};
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
        rows.push_back(row);
    }
    return rows;
}

Matrix matrix_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw InputError(path + ": expected a non-empty array of rows");
    const auto n = j.size();
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const std::string rp = path + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != n) throw InputError(rp + ": expected a row of length " + std::to_string(n));
        for (std::size_t k = 0; k < n; ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                complex_from_json(j[i][k], rp + "[" + std::to_string(k) + "]");
    }
    return m;
}

std::string growth_csv(const std::vector<GrowthRow>& rows) {
    std::string out = "t,norm,weighted\n";
    for (const auto& r : rows)
        out += format_double(r.t) + "," + format_double(r.norm) + "," + format_double(r.weighted) + "\n";
    return out;
}

std::string evolution_csv(const std::vector<EvolutionOperator>& series) {
    std::string out = "t";
    if (series.empty()) return out + "\n";
    const Eigen::Index n = series.front().matrix.rows();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) {
            // u01 is unambiguous only while both indices are single digits
            const std::string sep = n > 10 ? "_" : "";
            const std::string e = "u" + std::to_string(i) + sep + std::to_string(k);
            out += "," + e + "_re," + e + "_im";
        }
    out += "\n";
    for (const auto& u : series) {
        out += format_double(u.t);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index k = 0; k < n; ++k)
                out += "," + format_double(u.matrix(i, k).real()) + "," + format_double(u.matrix(i, k).imag());
        out += "\n";
    }
    return out;
}

}  // namespace fockcs
