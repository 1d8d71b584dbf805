/**
 * @file surfride_cli.cpp
 * @brief `surfride` command-line front end.
 *
 * Subcommands: threshold, sweep, oracle, fit, fk-force, validate.
 * Exit codes: 0 success, 2 validation error, 3 solver / no threshold,
 * 4 oracle failure.
 */
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "surfride/commands.hpp"
#include "surfride/config.hpp"
#include "surfride/error.hpp"
#include "surfride/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace surfride;

namespace {

struct Overrides {
    std::optional<double> wavelength;
    std::optional<double> height;
    std::optional<double> steepness;
    std::optional<std::string> force;
    std::optional<std::string> mu;
    std::optional<std::string> sweep_parameter;
    std::optional<double> sweep_from;
    std::optional<double> sweep_to;
    std::optional<int> sweep_count;
    std::optional<int> grid_positions;
    std::optional<int> grid_speeds;
    std::optional<double> horizon;
    std::optional<double> step;
    std::optional<std::string> report;
    std::optional<std::string> table;
    std::optional<std::string> trajectory;
};

json number_or_keyword(const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    return text;
}

void apply_overrides(json& doc, const Overrides& o) {
    auto& wave = doc["wave"];
    if (o.wavelength) wave["wavelength"] = *o.wavelength;
    if (o.height) {
        wave.erase("steepness");
        wave["height"] = *o.height;
    }
    if (o.steepness) {
        wave.erase("height");
        wave["steepness"] = *o.steepness;
    }
    if (o.force) wave["force_amplitude"] = number_or_keyword(*o.force);
    if (o.mu) wave["mu"] = number_or_keyword(*o.mu);
    if (o.sweep_parameter) doc["sweep"]["parameter"] = *o.sweep_parameter;
    if (o.sweep_from) doc["sweep"]["from"] = *o.sweep_from;
    if (o.sweep_to) doc["sweep"]["to"] = *o.sweep_to;
    if (o.sweep_count) doc["sweep"]["count"] = *o.sweep_count;
    if (o.grid_positions) doc["oracle"]["grid"]["positions"] = *o.grid_positions;
    if (o.grid_speeds) doc["oracle"]["grid"]["speeds"] = *o.grid_speeds;
    if (o.horizon) doc["oracle"]["horizon"] = *o.horizon;
    if (o.step) doc["oracle"]["step"] = *o.step;
    if (o.report) doc["output"]["report"] = *o.report;
    if (o.table) doc["output"]["table"] = *o.table;
    if (o.trajectory) doc["output"]["trajectory"] = *o.trajectory;
}

RunConfig load(const std::string& name, const Overrides& overrides) {
    const fs::path path = resolve_config_path(name);
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    apply_overrides(doc, overrides);
    const fs::path base = path.parent_path().empty() ? fs::current_path() : path.parent_path();
    return parse_config(doc, base);
}

template <typename Writer>
void emit(const std::string& path, Writer&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    write(out);
}

void emit_document(const std::string& path, const json& doc) {
    emit(path, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
}

void add_wave_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--wavelength", o.wavelength, "Wave length [m]");
    auto* h = cmd->add_option("--height", o.height, "Wave height [m]");
    auto* s = cmd->add_option("--steepness", o.steepness, "Wave steepness H/lambda");
    h->excludes(s);
    cmd->add_option("--force", o.force, "Surge force amplitude f [N] or 'compute'");
    cmd->add_option("--mu", o.mu, "Diffraction factor: number or 'sgisc'");
    cmd->add_option("-o,--output", o.report, "Report path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lower surf-riding threshold of a ship in following seas"};
    app.set_version_flag("--version", std::string("surfride ") + tool_version());
    app.require_subcommand(1);

    std::string config_name;
    Overrides o;

    auto add_config = [&](CLI::App* cmd) {
        cmd->add_option("config", config_name,
                        std::string("JSON config (also searched in $") + kConfigPathVariable + ")")
            ->required();
    };

    auto* threshold = app.add_subcommand("threshold", "Melnikov threshold n_cr");
    add_config(threshold);
    add_wave_flags(threshold, o);

    auto* sweep = app.add_subcommand("sweep", "Threshold table over steepness, wavelength or rate");
    add_config(sweep);
    add_wave_flags(sweep, o);
    sweep->add_option("--parameter", o.sweep_parameter, "steepness | wavelength | rate");
    sweep->add_option("--from", o.sweep_from, "First sweep value");
    sweep->add_option("--to", o.sweep_to, "Last sweep value");
    sweep->add_option("--count", o.sweep_count, "Number of sweep points");
    sweep->add_option("--table", o.table, "Table path (default stdout)");

    auto* oracle = app.add_subcommand("oracle", "Melnikov threshold checked against the surge ODE");
    add_config(oracle);
    add_wave_flags(oracle, o);
    oracle->add_option("--grid-positions", o.grid_positions, "Initial positions per wave length");
    oracle->add_option("--grid-speeds", o.grid_speeds, "Initial speeds per position");
    oracle->add_option("--horizon", o.horizon, "Integration horizon (nondimensional time)");
    oracle->add_option("--step", o.step, "RK4 step (nondimensional time)");
    oracle->add_option("--trajectory", o.trajectory, "Dump a trajectory at the oracle threshold");

    std::string samples_path;
    std::string fit_kind = "resistance";
    int fit_degree = -1;
    std::string fit_output;
    auto* fit = app.add_subcommand("fit", "Least-squares polynomial fit of a sample table");
    fit->add_option("samples", samples_path, "Two-column sample file")->required()->check(CLI::ExistingFile);
    fit->add_option("--kind", fit_kind, "resistance | kt")->check(CLI::IsMember({"resistance", "kt"}));
    fit->add_option("--degree", fit_degree, "Polynomial degree (default 5 for resistance, 2 for kt)");
    fit->add_option("-o,--output", fit_output, "Report path (default stdout)");

    auto* fk = app.add_subcommand("fk-force", "Froude-Krylov surge-force amplitude from hull sections");
    add_config(fk);
    add_wave_flags(fk, o);

    auto* validate = app.add_subcommand("validate", "Check a config without solving");
    add_config(validate);
    add_wave_flags(validate, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fit) {
            const auto samples = read_sample_table_file(samples_path);
            const auto kind = parse_fit_kind(fit_kind);
            const int degree = fit_degree >= 0 ? fit_degree : (kind == FitKind::Thrust ? 2 : 5);
            json rows = json::array();
            for (const auto& s : samples) rows.push_back({s.x, s.y});
            const std::string digest =
                sha256_digest(json{{"samples", rows}, {"kind", fit_kind}, {"degree", degree}}.dump());
            emit_document(fit_output, make_document("fit", digest, run_fit(samples, kind, degree)));
            return kExitOk;
        }

        const RunConfig config = load(config_name, o);
        const std::string digest = config_digest(config);

        if (*validate) {
            emit_document(config.output.report, make_document("validate", digest, run_validate(config)));
            return kExitOk;
        }
        if (*fk) {
            emit_document(config.output.report, make_document("fk-force", digest, run_fk_force(config)));
            return kExitOk;
        }
        if (*threshold) {
            const auto run = run_threshold(config);
            emit_document(config.output.report,
                          make_document("threshold", digest, threshold_payload(config, run)));
            if (!run.report.n_cr_positive) {
                std::cerr << "surfride: no physical threshold";
                for (const auto& note : run.report.notes) std::cerr << "; " << note;
                std::cerr << '\n';
                return kExitSolver;
            }
            return kExitOk;
        }
        if (*sweep) {
            if (!config.sweep) throw ValidationError("sweep: missing (config block or --parameter/--from/--to/--count)");
            const auto table = run_sweep(config, *config.sweep);
            emit(config.output.table, [&](std::ostream& out) { write_sweep_table(out, table, digest); });
            return kExitOk;
        }
        if (*oracle) {
            const auto comparison = run_oracle(config);
            emit_document(config.output.report,
                          make_document("oracle", digest, oracle_payload(config, comparison)));
            if (!config.output.trajectory.empty()) {
                emit(config.output.trajectory,
                     [&](std::ostream& out) { write_oracle_trajectory(out, config, comparison); });
            }
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "surfride: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kExitOk;
}
