// Command-line front end: scenario runner, acceptance suite, spectrum and
// evolution shortcuts. Exit codes: 0 all checks pass, 1 input error, 2 check failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "fockcs/evolution.hpp"
#include "fockcs/generator.hpp"
#include "fockcs/scenario.hpp"
#include "fockcs/serialize.hpp"
#include "fockcs/verify.hpp"

namespace {

using namespace fockcs;

constexpr int kInputError = 1;

std::optional<std::string> default_path(const std::string& stem, OutputFormat fmt) {
    const char* dir = std::getenv("FOCKCS_OUTPUT_DIR");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return (std::filesystem::path(dir) / (stem + (fmt == OutputFormat::csv ? ".csv" : ".json"))).string();
}

void emit(const std::string& content, const std::optional<std::string>& path) {
    if (!path) {
        std::cout << content;
        return;
    }
    write_atomically(*path, content);
    std::cerr << "wrote " << *path << "\n";
}

void summarize(const Report& r) {
    int counts[4] = {0, 0, 0, 0};
    for (const auto& rec : r.records) ++counts[static_cast<int>(rec.status)];
    std::cerr << r.scenario << ": " << counts[0] << " pass, " << counts[1] << " warn, " << counts[2] << " fail, "
              << counts[3] << " info\n";
    for (const auto& rec : r.records)
        if (rec.status == CheckStatus::fail)
            std::cerr << "  FAIL " << rec.id << " measured " << format_double(rec.measured)
                      << (rec.note.empty() ? "" : " (" + rec.note + ")") << "\n";
}

OutputFormat parse_format(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    throw InputError("--format: expected json or csv");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted composition conjugations and C-selfadjoint semigroups on the Fock space"};
    app.require_subcommand(1);

    std::string scenario_path;
    auto* validate = app.add_subcommand("validate", "Check a scenario file against its schema and constraints");
    validate->add_option("scenario", scenario_path, "Scenario JSON")->required();

    std::string out_path, format;
    bool parallel = false, timing = false;
    auto* run = app.add_subcommand("run", "Run a scenario and write its report");
    run->add_option("scenario", scenario_path, "Scenario JSON")->required();
    run->add_option("-o,--output", out_path, "Output path (overrides the scenario)");
    run->add_option("--format", format, "json or csv (overrides the scenario)");
    run->add_flag("--parallel", parallel, "Fan out independent checks");
    run->add_flag("--timing", timing, "Record wall time in the provenance block");

    VerifyOptions vopt;
    auto* verify = app.add_subcommand("verify-all", "Run the full acceptance suite");
    verify->add_option("--seed", vopt.seed, "Seed for random sample vectors");
    verify->add_option("--dim", vopt.dim, "Truncation dimension");
    verify->add_flag("--parallel", vopt.parallel, "Run criterion groups concurrently");
    verify->add_flag("--timing", vopt.timing, "Record wall time in the provenance block");
    verify->add_option("-o,--output", out_path, "Output path");
    verify->add_option("--format", format, "json or csv");

    std::string family_path;
    int k_max = 5, dim = 64;
    auto* spectrum = app.add_subcommand("spectrum", "Predicted point spectrum, eigenfunction residuals, truncated eigenvalues");
    spectrum->add_option("--family", family_path, "Family JSON")->required();
    spectrum->add_option("--kmax", k_max, "Largest eigenfunction index")->check(CLI::NonNegativeNumber);
    spectrum->add_option("--dim", dim, "Truncation dimension")->check(CLI::Range(2, 4096));
    spectrum->add_option("-o,--output", out_path, "Output path");

    BagchiParams bagchi;
    double kappa = 0.0, lam = 1.0, s0 = 0.0, t_end = 1.0, rel_tol = 1e-10;
    int steps = 10;
    auto* evolve_cmd = app.add_subcommand("evolve", "Time series of U(t, s) as CSV");
    evolve_cmd->add_option("--scenario", scenario_path, "Evolution scenario JSON (overrides the Bagchi options)");
    evolve_cmd->add_option("--nu", bagchi.nu, "Bagchi: nu");
    evolve_cmd->add_option("--kappa", kappa, "Bagchi: constant kappa");
    evolve_cmd->add_option("--lambda", lam, "Bagchi: constant lambda");
    evolve_cmd->add_option("--s", s0, "Start time");
    evolve_cmd->add_option("--t-end", t_end, "End time");
    evolve_cmd->add_option("--steps", steps, "Number of output times")->check(CLI::Range(1, 100000));
    evolve_cmd->add_option("--rel-tol", rel_tol, "Local relative error tolerance")->check(CLI::PositiveNumber);
    evolve_cmd->add_option("-o,--output", out_path, "Output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (*validate) {
            const Scenario s = load_scenario(scenario_path);
            std::cout << "ok: " << s.name << " (" << to_string(s.kind) << ", dim " << s.truncation.dim << ")\n";
            return 0;
        }

        if (*run) {
            Scenario s = load_scenario(scenario_path);
            if (!out_path.empty()) s.output.path = out_path;
            if (!format.empty()) s.output.format = parse_format(format);
            const ScenarioResult res = execute_scenario(s, {parallel, timing});
            emit(render(res, s.output.format), resolve_output_path(s));
            summarize(res.report);
            return exit_code(res.report);
        }

        if (*verify) {
            const OutputFormat fmt = format.empty() ? OutputFormat::json : parse_format(format);
            const Report rep = verify_all(vopt);
            const std::string body = fmt == OutputFormat::csv ? rep.to_csv() : rep.to_json().dump(2) + "\n";
            emit(body, out_path.empty() ? default_path("verify-all", fmt) : std::optional(out_path));
            summarize(rep);
            return exit_code(rep);
        }

        if (*spectrum) {
            std::ifstream in(family_path);
            if (!in) throw InputError(family_path + ": cannot open");
            json j;
            try {
                j = json::parse(in);
            } catch (const json::parse_error& e) {
                throw InputError(family_path + ": malformed JSON: " + e.what());
            }
            const SemigroupFamily fam = family_from_json(j);
            if (k_max >= dim) throw InputError("--kmax must be below --dim");
            const SpectrumReport rep = spectrum_report(fam, k_max, dim);
            emit(to_json(rep).dump(2) + "\n", out_path.empty() ? default_path("spectrum", OutputFormat::json)
                                                                : std::optional(out_path));
            return 0;
        }

        if (*evolve_cmd) {
            if (!scenario_path.empty()) {
                Scenario s = load_scenario(scenario_path);
                if (s.kind != ScenarioKind::evolution) throw InputError("$.kind: evolve needs an evolution scenario");
                s.output.format = OutputFormat::csv;
                if (!out_path.empty()) s.output.path = out_path;
                const ScenarioResult res = execute_scenario(s);
                emit(res.table_csv, resolve_output_path(s));
                summarize(res.report);
                return exit_code(res.report);
            }
            bagchi.kappa = [kappa](double) { return kappa; };
            bagchi.lam = [lam](double) { return lam; };
            std::vector<std::pair<double, double>> pairs;
            for (int i = 1; i <= steps; ++i) pairs.emplace_back(s0, s0 + (t_end - s0) * i / steps);
            const auto series = kernels::evolve_many_serial(bagchi_hamiltonian(bagchi), pairs, rel_tol);
            emit(evolution_csv(series),
                 out_path.empty() ? default_path("evolve", OutputFormat::csv) : std::optional(out_path));
            return 0;
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    }
    return 0;
}
