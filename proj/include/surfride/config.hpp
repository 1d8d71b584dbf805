/**
 * @file config.hpp
 * @brief Run configuration: JSON ingestion with unit conversion to SI,
 *        and the normalized (SI) serialization used for digests and
 *        round trips.
 */
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfride/dynamics.hpp"
#include "surfride/hydro.hpp"
#include "surfride/melnikov.hpp"

namespace surfride {

/// Environment variable holding extra directories to search for config files.
inline constexpr const char* kConfigPathVariable = "SURFRIDE_CONFIG_PATH";

enum class CurveSource { Coefficients, Samples };

/// R(u) or K_T(J) as given: either coefficients or a table to fit.
struct CurveInput {
    CurveSource source = CurveSource::Coefficients;
    std::vector<double> coefficients;
    std::vector<Sample> samples;
    int degree = 0;
    bool degenerate = false;

    bool operator==(const CurveInput&) const = default;
};

enum class ForceSource { Explicit, Compute };

struct WaveInput {
    double wavelength = 0.0;
    double height = 0.0;
    double gravity = kStandardGravity;
    ForceSource force_source = ForceSource::Explicit;
    double force_amplitude = 0.0;  ///< used when force_source == Explicit
    MuSpec mu;

    double steepness() const { return height / wavelength; }
    bool operator==(const WaveInput&) const = default;
};

struct HullInput {
    HullSectionTable table;
    double mass_tolerance = 0.02;

    bool operator==(const HullInput&) const = default;
};

enum class SweepParameter { Steepness, Wavelength, Rate };
const char* to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(const std::string& name);

struct SweepSpec {
    SweepParameter parameter = SweepParameter::Steepness;
    double from = 0.0;
    double to = 0.0;
    int count = 0;

    bool operator==(const SweepSpec&) const = default;
};

struct OutputSpec {
    std::string report;      ///< JSON report path; empty = stdout
    std::string table;       ///< sweep table path; empty = stdout
    std::string trajectory;  ///< optional trajectory dump for the oracle

    bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
    ShipPropulsion ship;
    CurveInput resistance;
    CurveInput propeller;
    WaveInput wave;
    std::optional<HullInput> hull;
    SolverOptions solver;
    OracleOptions oracle;
    std::optional<RateRange> oracle_range;
    std::optional<SweepSpec> sweep;
    OutputSpec output;
};

/**
 * Parses a config document. Relative `*_file` references are resolved
 * against `base_dir` and read immediately, so every referenced file has
 * been parsed before this returns. Throws ValidationError with the
 * offending field path.
 */
RunConfig parse_config(const nlohmann::json& document,
                       const std::filesystem::path& base_dir = std::filesystem::current_path());

/// Locates `name` directly or in the SURFRIDE_CONFIG_PATH directories, then parses it.
RunConfig load_config(const std::string& name);
std::filesystem::path resolve_config_path(const std::string& name);

/// SI-normalized document; parse_config(serialize_config(c)) reproduces c.
nlohmann::json serialize_config(const RunConfig& config);

/// "sha256:<hex>" of arbitrary text.
std::string sha256_digest(const std::string& text);

/// SHA-256 of the normalized config document.
std::string config_digest(const RunConfig& config);

/// Two-column `x y` sample table (comments with `#`).
std::vector<Sample> read_sample_table(std::istream& in);
std::vector<Sample> read_sample_table_file(const std::string& path);

// Resolved models.
PolynomialCurve resolve_resistance(const RunConfig& config);
ThrustModel resolve_thrust(const RunConfig& config);

struct ResolvedWave {
    WaveCase wave;
    double mu = 1.0;
    std::optional<FroudeKrylovResult> froude_krylov;
};

/// Builds the WaveCase, computing f from the hull when requested.
ResolvedWave resolve_wave(const RunConfig& config, const WaveInput& input);

}  // namespace surfride
