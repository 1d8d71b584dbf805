/**
 * @file commands.hpp
 * @brief Subcommand implementations shared by the CLI and the Python module.
 *
 * Each command takes an already validated RunConfig and returns plain
 * result structs; JSON payloads are built by the *_payload helpers.
 */
#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfride/config.hpp"

namespace surfride {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitOracle = 4;

/// Maps a thrown exception to its exit code (validation errors and unknown failures give 2).
int exit_code_for(const std::exception& error);

struct ThresholdRun {
    ThresholdReport report;
    WaveCase wave;
    double mu = 1.0;
    std::optional<FroudeKrylovResult> froude_krylov;
};

/// Closed form for a quadratic K_T, bisection otherwise; certificate and validity attached.
ThresholdRun run_threshold(const RunConfig& config);
ThresholdRun run_threshold(const RunConfig& config, const WaveInput& wave);
nlohmann::json threshold_payload(const RunConfig& config, const ThresholdRun& run);

struct SweepRow {
    int index = 0;
    double value = 0.0;
    /// "ok", "no-threshold", or "error: <message>".
    std::string status;
    std::optional<double> n_cr;
    /// Melnikov residual at the swept rate (rate sweeps) or at n_cr.
    std::optional<double> residual;
    double force_amplitude = 0.0;
    double steepness = 0.0;
    double mean_speed = 0.0;
    double mean_square_speed = 0.0;
    double expected_resistance = 0.0;
    bool rtcond = false;
    bool u_positive_bound = false;
    bool mean_speed_bound = false;
    bool u_positive_proxy_ok = false;
    bool mean_speed_proxy_ok = false;
};

struct SweepTable {
    SweepParameter parameter = SweepParameter::Steepness;
    std::vector<SweepRow> rows;
};

/// Throws ValidationError for an empty or non-physical range; per-row failures land in `status`.
SweepTable run_sweep(const RunConfig& config, const SweepSpec& spec);
/// Tab-separated table preceded by `#` metadata lines.
void write_sweep_table(std::ostream& out, const SweepTable& table, const std::string& config_digest);

struct OracleComparison {
    ThresholdRun melnikov;
    OracleResult oracle;
    double relative_difference = 0.0;  ///< |n_mel - n_ode| / n_ode
};

OracleComparison run_oracle(const RunConfig& config);
nlohmann::json oracle_payload(const RunConfig& config, const OracleComparison& comparison);
/// Trajectory at the oracle threshold from the slowest grid state at mid-wave.
void write_oracle_trajectory(std::ostream& out, const RunConfig& config,
                             const OracleComparison& comparison);

enum class FitKind { Resistance, Thrust };
FitKind parse_fit_kind(const std::string& name);
/// Fitted curve document; a quadratic K_T with the wrong signs is a ValidationError.
nlohmann::json run_fit(std::span<const Sample> samples, FitKind kind, int degree);

nlohmann::json run_fk_force(const RunConfig& config);

/// Normalized config, resolved wave quantities and warnings.
nlohmann::json run_validate(const RunConfig& config);

}  // namespace surfride
