/**
 * @file hydro.hpp
 * @brief Froude-Krylov surge-force amplitude from hull section data, the
 *        empirical diffraction factor mu, and the wave-case validity bounds.
 *
 * The wave-induced surge force is X_w = -f sin(k xi_G) with
 *
 *   f = mu * pi * rho * g * (H / lambda) * sqrt(Fc^2 + Fs^2)
 *   Fc = int S(x) sin(k x) exp(-k d(x) / 2) dx
 *   Fs = int S(x) cos(k x) exp(-k d(x) / 2) dx
 *
 * where x is the longitudinal station position measured from midship.
 */
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "surfride/core.hpp"

namespace surfride {

struct Station {
    double x = 0.0;        ///< longitudinal position from midship [m]
    double area = 0.0;     ///< submerged sectional area S [m^2]
    double draught = 0.0;  ///< local draught d [m]

    bool operator==(const Station&) const = default;
};

struct HullSectionTable {
    std::vector<Station> stations;
    double block_coefficient = 0.0;    ///< C_b
    double midship_coefficient = 0.0;  ///< C_m

    /// Stations strictly increasing in x, S >= 0, d >= 0, at least two rows.
    void validate() const;
    /// rho * int S dx by the trapezoid rule.
    double displaced_mass(double water_density) const;

    bool operator==(const HullSectionTable&) const = default;
};

/**
 * Reads a whitespace-separated station table: one `x S d` row per line.
 * Lines starting with `#` are comments; an optional `# units: ...` line is
 * accepted when it names SI units (m m^2 m) and rejected otherwise.
 */
HullSectionTable read_station_table(std::istream& in);
HullSectionTable read_station_table_file(const std::string& path);

/**
 * @brief Experimental diffraction correction for the surge force.
 *
 * 1.46 C_b - 0.05 for C_m < 0.86, (5.76 - 5.00 C_m) C_b - 0.05 on
 * [0.86, 0.94] and 1.06 C_b - 0.05 above. The three pieces join
 * continuously. Requires 0 < C_b <= 1 and 0 < C_m <= 1.
 */
double diffraction_mu(double block_coefficient, double midship_coefficient);

enum class MuMode { Unity, SgiscFormula, Explicit };

struct MuSpec {
    MuMode mode = MuMode::Unity;
    double value = 1.0;  ///< used by MuMode::Explicit

    static MuSpec unity() { return {}; }
    static MuSpec sgisc_formula() { return {MuMode::SgiscFormula, 0.0}; }
    static MuSpec explicit_value(double mu) { return {MuMode::Explicit, mu}; }

    bool operator==(const MuSpec&) const = default;
};

double resolve_mu(const MuSpec& spec, const HullSectionTable& hull);

struct FroudeKrylovOptions {
    double water_density = kSeaWaterDensity;
    /// Ship mass for the rho * int S dx consistency check (skipped if empty).
    std::optional<double> ship_mass;
    double mass_tolerance = 0.02;
    /// Recompute on a midpoint-refined table and report the relative change.
    bool refinement_check = false;
};

struct FroudeKrylovResult {
    double sine_integral = 0.0;    ///< Fc
    double cosine_integral = 0.0;  ///< Fs
    double mu = 1.0;
    double amplitude = 0.0;  ///< f [N]
    double displaced_mass = 0.0;
    std::optional<double> mass_ratio;  ///< displaced_mass / ship_mass
    bool mass_consistent = true;
    /// rho * g * pi * (H / lambda) * mu * int S dx; f never exceeds it.
    double amplitude_upper_bound = 0.0;
    std::optional<double> refinement_change;
    std::vector<std::string> warnings;
};

FroudeKrylovResult froude_krylov_amplitude(const HullSectionTable& hull, const WaveCase& wave,
                                           const MuSpec& mu, const FroudeKrylovOptions& options = {});

/// Appendix-style checks of whether a unique threshold is expected.
struct ValidityAssessment {
    double steepness = 0.0;  ///< H / lambda
    double mu = 1.0;
    double force_amplitude = 0.0;
    double total_mass = 0.0;
    /// f < (m + m_x) g / 4  <=>  u > 0 along the whole orbit.
    double u_positive_limit = 0.0;
    bool u_positive_bound = false;
    /// f < (pi^2 / 16)(m + m_x) g  <=>  E[u] > 0.
    double mean_speed_limit = 0.0;
    bool mean_speed_bound = false;
    /// mu (4 pi / 1.1)(H / lambda): below 1 the u > 0 bound holds for any hull.
    double u_positive_proxy = 0.0;
    double u_positive_steepness_limit = 0.0;
    bool u_positive_proxy_ok = false;
    /// mu (16 / (1.1 pi))(H / lambda): below 1 the E[u] > 0 bound holds for any hull.
    double mean_speed_proxy = 0.0;
    double mean_speed_steepness_limit = 0.0;
    bool mean_speed_proxy_ok = false;
    /// Steepness-level stand-in for the root-sign condition (the E[u] > 0 proxy).
    bool rtcond_proxy = false;
};

ValidityAssessment assess_validity(const ShipPropulsion& ship, const WaveCase& wave, double mu);

/// Steepness below which mu * factor * (H / lambda) < 1, for the two proxy factors.
double u_positive_steepness_limit(double mu);
double mean_speed_steepness_limit(double mu);

}  // namespace surfride
