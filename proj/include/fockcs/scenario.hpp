#pragma once

#include <optional>
#include <string>

#include "fockcs/fock.hpp"
#include "fockcs/report.hpp"
#include "fockcs/serialize.hpp"

namespace fockcs {

enum class ScenarioKind { conjugation_check, wco, semigroup, generator, spectrum, evolution, full_verify };
enum class OutputFormat { json, csv };

std::string to_string(ScenarioKind k);
ScenarioKind scenario_kind_from_string(const std::string& s);

struct OutputSpec {
    std::string path;  // empty: FOCKCS_OUTPUT_DIR/<name>.<ext> if set, else stdout
    OutputFormat format = OutputFormat::json;
};

struct Scenario {
    std::string name;
    ScenarioKind kind = ScenarioKind::full_verify;
    json params = json::object();
    TruncationConfig truncation;
    OutputSpec output;
};

/// Schema check plus the kind-specific parameter constraints, all before any
/// computation. Throws InputError naming the JSON path of the first problem.
Scenario parse_scenario(const json& j);
Scenario load_scenario(const std::string& path);

/// Builds every operator the scenario needs without running checks.
void validate_scenario(const Scenario& s);

struct ScenarioResult {
    Report report;
    /// Kind-specific table (growth rows, evolution time series); empty otherwise.
    std::string table_csv;
};

struct RunOptions {
    bool parallel = false;
    bool timing = false;
};

/// Numerical failures become failing records rather than exceptions.
ScenarioResult execute_scenario(const Scenario& s, const RunOptions& opt = {});

/// Rendered output: the report as JSON, or CSV (the kind-specific table when
/// there is one, else the records).
std::string render(const ScenarioResult& r, OutputFormat fmt);

/// Output path after applying FOCKCS_OUTPUT_DIR; nullopt means stdout.
std::optional<std::string> resolve_output_path(const Scenario& s);

/// 0 when nothing failed, 2 otherwise.
int exit_code(const Report& r);

}  // namespace fockcs
