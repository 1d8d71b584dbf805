#include "surfride/commands.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "parallel.hpp"
#include "surfride/error.hpp"
#include "surfride/report.hpp"

namespace surfride {

using nlohmann::json;

int exit_code_for(const std::exception& error) {
    if (dynamic_cast<const OracleError*>(&error)) return kExitOracle;
    if (dynamic_cast<const SolverError*>(&error)) return kExitSolver;
    return kExitValidation;
}

ThresholdRun run_threshold(const RunConfig& config) { return run_threshold(config, config.wave); }

ThresholdRun run_threshold(const RunConfig& config, const WaveInput& input) {
    const auto resistance = resolve_resistance(config);
    const auto thrust = resolve_thrust(config);
    auto resolved = resolve_wave(config, input);
    const MelnikovProblem problem(config.ship, resolved.wave, resistance, thrust);

    ThresholdRun run;
    if (thrust.degree() == 2) {
        thrust.require_quadratic_signs();
        run.report = solve_threshold_quadratic(problem);
    } else {
        run.report = solve_threshold_general(problem, std::nullopt, config.solver);
    }
    run.report.validity = assess_validity(config.ship, resolved.wave, resolved.mu);
    if (config.ship.added_mass_estimated) {
        run.report.notes.emplace_back("added mass estimated as 0.1 m");
    }
    run.wave = resolved.wave;
    run.mu = resolved.mu;
    run.froude_krylov = std::move(resolved.froude_krylov);
    return run;
}

json threshold_payload(const RunConfig& config, const ThresholdRun& run) {
    json out = {{"report", to_json(run.report)},
                {"wave",
                 {{"wavelength", run.wave.wavelength()},
                  {"height", run.wave.height()},
                  {"steepness", run.wave.steepness()},
                  {"force_amplitude", run.wave.force_amplitude()},
                  {"force_source", config.wave.force_source == ForceSource::Compute ? "hull" : "explicit"},
                  {"mu", run.mu}}}};
    out["froude_krylov"] = run.froude_krylov ? to_json(*run.froude_krylov) : json(nullptr);
    return out;
}

namespace {

void check_sweep_range(const SweepSpec& spec) {
    if (spec.count < 1) throw ValidationError("sweep: empty range (count must be >= 1)");
    if (!std::isfinite(spec.from) || !std::isfinite(spec.to) || spec.from > spec.to) {
        throw ValidationError("sweep: expected finite from <= to");
    }
    if (spec.count > 1 && spec.from == spec.to) {
        throw ValidationError("sweep: empty range (from == to with more than one point)");
    }
    if (!(spec.from > 0.0)) {
        throw ValidationError(std::string("sweep: ") + to_string(spec.parameter) + " must be > 0");
    }
}

double sweep_value(const SweepSpec& spec, int i) {
    if (spec.count == 1) return spec.from;
    return spec.from + (spec.to - spec.from) * i / (spec.count - 1);
}

// Wave input at one sweep point. An explicit f is treated as linear in H.
WaveInput swept_wave(const RunConfig& config, SweepParameter parameter, double value) {
    WaveInput w = config.wave;
    switch (parameter) {
        case SweepParameter::Steepness: {
            const double height = value * w.wavelength;
            if (w.force_source == ForceSource::Explicit) {
                if (!(w.height > 0.0)) {
                    throw ValidationError("sweep: steepness sweep with explicit f needs wave.height > 0");
                }
                w.force_amplitude *= height / w.height;
            }
            w.height = height;
            break;
        }
        case SweepParameter::Wavelength:
            w.height = w.steepness() * value;
            w.wavelength = value;
            break;
        case SweepParameter::Rate:
            break;
    }
    return w;
}

void fill_row(SweepRow& row, const ThresholdRun& run) {
    const auto& r = run.report;
    row.n_cr = r.n_cr_positive;
    row.force_amplitude = run.wave.force_amplitude();
    row.steepness = run.wave.steepness();
    row.mean_speed = r.mean_speed;
    row.mean_square_speed = r.mean_square_speed;
    row.expected_resistance = r.expected_resistance;
    row.rtcond = r.rtcond_satisfied;
    if (r.validity) {
        row.u_positive_bound = r.validity->u_positive_bound;
        row.mean_speed_bound = r.validity->mean_speed_bound;
        row.u_positive_proxy_ok = r.validity->u_positive_proxy_ok;
        row.mean_speed_proxy_ok = r.validity->mean_speed_proxy_ok;
    }
    row.status = r.n_cr_positive ? "ok" : "no-threshold";
}

std::string format_optional(const std::optional<double>& v) {
    if (!v) return "nan";
    std::ostringstream s;
    s.precision(12);
    s << *v;
    return s.str();
}

}  // namespace

SweepTable run_sweep(const RunConfig& config, const SweepSpec& spec) {
    check_sweep_range(spec);
    // Fail fast on problems that would hit every row.
    resolve_resistance(config);
    resolve_thrust(config);

    SweepTable table;
    table.parameter = spec.parameter;
    table.rows.resize(static_cast<std::size_t>(spec.count));
    detail::parallel_for(table.rows.size(), [&](std::size_t i) {
        SweepRow& row = table.rows[i];
        row.index = static_cast<int>(i);
        row.value = sweep_value(spec, row.index);
        try {
            const auto input = swept_wave(config, spec.parameter, row.value);
            ThresholdRun run;
            try {
                run = run_threshold(config, input);
                fill_row(row, run);
            } catch (const NoThresholdError& e) {
                row.status = std::string("no-threshold: ") + e.what();
                if (spec.parameter != SweepParameter::Rate) return;
            }
            if (spec.parameter == SweepParameter::Rate) {
                const auto resolved = resolve_wave(config, input);
                const MelnikovProblem problem(config.ship, resolved.wave, resolve_resistance(config),
                                              resolve_thrust(config));
                row.residual = melnikov_residual(problem, row.value);
            } else if (run.report.n_cr_positive) {
                row.residual = run.report.residual;
            }
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
        }
    });
    return table;
}

void write_sweep_table(std::ostream& out, const SweepTable& table, const std::string& config_digest) {
    out << "# tool: surfride\n"
        << "# version: " << tool_version() << "\n"
        << "# config_digest: " << config_digest << "\n"
        << "# sweep: " << to_string(table.parameter) << "\n";
    out << "index\tvalue\tn_cr\tresidual\tforce_amplitude\tsteepness\tmean_speed\tmean_square_speed"
           "\texpected_resistance\trtcond\tu_positive_bound\tmean_speed_bound"
           "\tu_positive_proxy_ok\tmean_speed_proxy_ok\tstatus\n";
    out.precision(12);
    for (const auto& r : table.rows) {
        out << r.index << '\t' << r.value << '\t' << format_optional(r.n_cr) << '\t'
            << format_optional(r.residual) << '\t' << r.force_amplitude << '\t' << r.steepness << '\t'
            << r.mean_speed << '\t' << r.mean_square_speed << '\t' << r.expected_resistance << '\t'
            << r.rtcond << '\t' << r.u_positive_bound << '\t' << r.mean_speed_bound << '\t'
            << r.u_positive_proxy_ok << '\t' << r.mean_speed_proxy_ok << '\t' << r.status << '\n';
    }
}

OracleComparison run_oracle(const RunConfig& config) {
    OracleComparison out;
    out.melnikov = run_threshold(config);
    if (!out.melnikov.report.n_cr_positive) {
        throw NoThresholdError("no Melnikov threshold to compare against the oracle");
    }
    out.oracle = oracle_threshold(config.ship, out.melnikov.wave, resolve_resistance(config),
                                  resolve_thrust(config), config.oracle_range, config.oracle);
    out.relative_difference =
        std::abs(*out.melnikov.report.n_cr_positive - out.oracle.n_cr) / out.oracle.n_cr;
    return out;
}

json oracle_payload(const RunConfig& config, const OracleComparison& c) {
    json out = threshold_payload(config, c.melnikov);
    out["oracle"] = to_json(c.oracle);
    out["melnikov_n_cr"] = *c.melnikov.report.n_cr_positive;
    out["oracle_n_cr"] = c.oracle.n_cr;
    out["relative_difference"] = c.relative_difference;
    return out;
}

void write_oracle_trajectory(std::ostream& out, const RunConfig& config, const OracleComparison& c) {
    const SurgeModel model(config.ship, c.melnikov.wave, resolve_resistance(config),
                           resolve_thrust(config), c.oracle.n_cr);
    const SurgeState start{0.0, config.oracle.grid.speed_min * c.melnikov.wave.celerity()};
    const auto& cap = config.oracle.capture;
    const auto samples = integrate(model, start, cap.horizon, cap.step, 5);
    write_trajectory(out, model, samples);
}

FitKind parse_fit_kind(const std::string& name) {
    if (name == "resistance") return FitKind::Resistance;
    if (name == "kt") return FitKind::Thrust;
    throw ValidationError("fit kind must be 'resistance' or 'kt', got '" + name + "'");
}

json run_fit(std::span<const Sample> samples, FitKind kind, int degree) {
    const auto curve = fit_polynomial(samples, degree);
    json out = {{"kind", kind == FitKind::Resistance ? "resistance" : "kt"},
                {"samples", samples.size()},
                {"curve", to_json(curve)}};
    if (kind == FitKind::Thrust && degree == 2) {
        out["sign_conditions"] = {{"kappa0_positive", curve.coefficient(0) > 0.0},
                                  {"kappa2_negative", curve.coefficient(2) < 0.0}};
        ThrustModel::from_curve(curve).require_quadratic_signs();
    }
    return out;
}

json run_fk_force(const RunConfig& config) {
    if (!config.hull) throw ValidationError("fk-force needs a hull block");
    WaveInput input = config.wave;
    input.force_source = ForceSource::Compute;
    const auto resolved = resolve_wave(config, input);
    json out = to_json(*resolved.froude_krylov);
    out["wave"] = {{"wavelength", resolved.wave.wavelength()},
                   {"height", resolved.wave.height()},
                   {"steepness", resolved.wave.steepness()},
                   {"wave_number", resolved.wave.wave_number()}};
    out["validity"] = to_json(assess_validity(config.ship, resolved.wave, resolved.mu));
    return out;
}

json run_validate(const RunConfig& config) {
    const auto resistance = resolve_resistance(config);
    const auto thrust = resolve_thrust(config);
    if (thrust.degree() == 2) thrust.require_quadratic_signs();
    const auto resolved = resolve_wave(config, config.wave);
    json warnings = json::array();
    if (config.ship.added_mass_estimated) warnings.push_back("added mass estimated as 0.1 m");
    if (resolved.froude_krylov) {
        for (const auto& w : resolved.froude_krylov->warnings) warnings.push_back(w);
    }
    return {{"valid", true},
            {"config", serialize_config(config)},
            {"resistance", to_json(resistance)},
            {"thrust_kappa", std::vector<double>(thrust.kappa().begin(), thrust.kappa().end())},
            {"force_amplitude", resolved.wave.force_amplitude()},
            {"mu", resolved.mu},
            {"celerity", resolved.wave.celerity()},
            {"validity", to_json(assess_validity(config.ship, resolved.wave, resolved.mu))},
            {"warnings", warnings}};
}

}  // namespace surfride
