/**
 * @file core.hpp
 * @brief Ship, propulsion and wave domain types with the kinematic
 *        relations used by every other module. Strict SI throughout.
 */
#pragma once

#include <span>
#include <vector>

#include "surfride/polynomial.hpp"

namespace surfride {

inline constexpr double kStandardGravity = 9.81;
inline constexpr double kSeaWaterDensity = 1025.0;

/// Added-mass heuristic used when no surge added mass is supplied.
inline double estimated_added_mass(double mass) { return 0.1 * mass; }

/// Mass and propulsion constants entering the surge equation.
struct ShipPropulsion {
    double mass = 0.0;              ///< m [kg]
    double added_mass = 0.0;        ///< m_x [kg]
    double wake_fraction = 0.0;     ///< w_p [-]
    double thrust_deduction = 0.0;  ///< t_p [-]
    double prop_diameter = 0.0;     ///< D [m]
    double water_density = kSeaWaterDensity;  ///< rho [kg/m^3]
    /// Set when added_mass came from estimated_added_mass().
    bool added_mass_estimated = false;

    double total_mass() const { return mass + added_mass; }

    /// Throws ValidationError naming the first violated field.
    void validate() const;

    bool operator==(const ShipPropulsion&) const = default;
};

/**
 * @brief Open-water thrust coefficient K_T(J) = sum kappa_i J^i.
 *
 * The kappa are the primary data; the dimensional coefficients of
 * T_e(u; n) = sum_i tau_i n^(2-i) u^i are derived against a ship on demand,
 * with tau_i = kappa_i (1 - t_p)(1 - w_p)^i rho D^(4-i).
 */
class ThrustModel {
public:
    ThrustModel() = default;
    explicit ThrustModel(std::vector<double> kappa);
    static ThrustModel from_curve(const PolynomialCurve& kt_curve);

    int degree() const { return static_cast<int>(kappa_.size()) - 1; }
    std::span<const double> kappa() const { return kappa_; }
    double kappa(int i) const;

    /// True when no term above J^2 is present.
    bool is_quadratic() const;
    /// True when some kappa_i with i > 2 is non-zero (T_e undefined at n = 0).
    bool has_inverse_rate_terms() const;

    /// tau_i for any i >= 0.
    double tau(int i, const ShipPropulsion& ship) const;

    /// Throws ValidationError unless kappa_0 > 0 and kappa_2 < 0.
    void require_quadratic_signs() const;

    bool operator==(const ThrustModel&) const = default;

private:
    std::vector<double> kappa_;
};

struct WaveKinematics {
    double wave_number = 0.0;  ///< k [1/m]
    double celerity = 0.0;     ///< c_w [m/s]
};

/// Deep-water dispersion: k = 2 pi / lambda, c_w = sqrt(g / k).
WaveKinematics wave_kinematics(double wavelength, double gravity = kStandardGravity);

/// Regular following wave and the amplitude f of X_w = -f sin(k xi_G).
class WaveCase {
public:
    WaveCase() = default;
    WaveCase(double wavelength, double height, double force_amplitude,
             double gravity = kStandardGravity);

    double wavelength() const { return wavelength_; }
    double height() const { return height_; }
    double force_amplitude() const { return force_amplitude_; }
    double gravity() const { return gravity_; }
    double wave_number() const { return kinematics_.wave_number; }
    double celerity() const { return kinematics_.celerity; }
    double steepness() const { return height_ / wavelength_; }

    WaveCase with_force_amplitude(double f) const;
    WaveCase with_height(double height) const;

    bool operator==(const WaveCase&) const = default;

private:
    double wavelength_ = 0.0;
    double height_ = 0.0;
    double force_amplitude_ = 0.0;
    double gravity_ = kStandardGravity;
    WaveKinematics kinematics_{};
};

/// T_e(u; n). Throws OutOfModelRange for n = 0 when K_T has terms above J^2.
double effective_thrust(const ThrustModel& model, const ShipPropulsion& ship, double u, double n);

/// d T_e / d n at fixed u.
double effective_thrust_rate_derivative(const ThrustModel& model, const ShipPropulsion& ship,
                                        double u, double n);

/// R(u) by Horner evaluation.
inline double calm_water_resistance(const PolynomialCurve& curve, double u) { return curve(u); }

/// x^e for integer e (negative allowed, x != 0 then).
double integer_power(double x, int e);

/// Binomial coefficient as a double.
double binomial(int n, int k);

}  // namespace surfride
