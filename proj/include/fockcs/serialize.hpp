#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fockcs/conjugation.hpp"
#include "fockcs/evolution.hpp"
#include "fockcs/fock.hpp"
#include "fockcs/generator.hpp"
#include "fockcs/semigroup.hpp"
#include "fockcs/wco.hpp"

namespace fockcs {

using json = nlohmann::json;

// Complex scalars are always [re, im]. Parse errors throw InputError with the
// JSON path of the offending field.

json to_json(Complex z);
Complex complex_from_json(const json& j, const std::string& path);

json to_json(const FockVector& f);
FockVector fock_vector_from_json(const json& j, const std::string& path = "$");

json to_json(const ConjugationParams& p);
ConjugationParams conjugation_from_json(const json& j, const std::string& path = "$");

json to_json(const WCOParams& p);
WCOParams wco_from_json(const json& j, const std::string& path = "$");

json to_json(const SemigroupFamily& f);
SemigroupFamily family_from_json(const json& j, const std::string& path = "$");

json to_json(const SpectrumReport& r);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& path);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// CSV with header t,norm,weighted.
std::string growth_csv(const std::vector<GrowthRow>& rows);

/// CSV with header t,u00_re,u00_im,u01_re,... (row-major entries of U(t,s)).
std::string evolution_csv(const std::vector<EvolutionOperator>& series);

// Field access helpers used by scenario parsing.
const json& require_field(const json& j, const std::string& key, const std::string& path);
double number_field(const json& j, const std::string& key, const std::string& path);
double number_field_or(const json& j, const std::string& key, const std::string& path, double fallback);
int int_field_or(const json& j, const std::string& key, const std::string& path, int fallback);

}  // namespace fockcs
