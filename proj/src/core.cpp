#include "surfride/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "surfride/error.hpp"

namespace surfride {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ValidationError(message);
}

}  // namespace

double integer_power(double x, int e) {
    if (e < 0) return 1.0 / integer_power(x, -e);
    double result = 1.0;
    double base = x;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double result = 1.0;
    for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
    return std::round(result);
}

void ShipPropulsion::validate() const {
    require(std::isfinite(mass) && mass > 0.0, "ship.mass must be > 0");
    require(std::isfinite(added_mass) && added_mass >= 0.0, "ship.added_mass must be >= 0");
    require(wake_fraction >= 0.0 && wake_fraction < 1.0, "ship.wake_fraction must lie in [0, 1)");
    require(thrust_deduction >= 0.0 && thrust_deduction < 1.0,
            "ship.thrust_deduction must lie in [0, 1)");
    require(std::isfinite(prop_diameter) && prop_diameter > 0.0, "ship.prop_diameter must be > 0");
    require(std::isfinite(water_density) && water_density > 0.0,
            "ship.water_density must be > 0");
}

ThrustModel::ThrustModel(std::vector<double> kappa) : kappa_(std::move(kappa)) {
    require(!kappa_.empty(), "thrust model needs at least kappa_0");
    for (double k : kappa_) require(std::isfinite(k), "thrust coefficient is not finite");
}

ThrustModel ThrustModel::from_curve(const PolynomialCurve& kt_curve) {
    const auto c = kt_curve.coefficients();
    return ThrustModel(std::vector<double>(c.begin(), c.end()));
}

double ThrustModel::kappa(int i) const {
    if (i < 0 || i > degree()) return 0.0;
    return kappa_[static_cast<std::size_t>(i)];
}

bool ThrustModel::is_quadratic() const { return !has_inverse_rate_terms(); }

bool ThrustModel::has_inverse_rate_terms() const {
    for (int i = 3; i <= degree(); ++i) {
        if (kappa(i) != 0.0) return true;
    }
    return false;
}

double ThrustModel::tau(int i, const ShipPropulsion& ship) const {
    return kappa(i) * (1.0 - ship.thrust_deduction) * integer_power(1.0 - ship.wake_fraction, i) *
           ship.water_density * integer_power(ship.prop_diameter, 4 - i);
}

void ThrustModel::require_quadratic_signs() const {
    if (!(kappa(0) > 0.0)) {
        throw ValidationError(
            "kappa_0 must be positive: K_T has to be positive at J = 0 (u = 0, n > 0)");
    }
    if (!(kappa(2) < 0.0)) {
        throw ValidationError(
            "kappa_2 must be negative: it carries the K_T reduction at large J");
    }
}

WaveKinematics wave_kinematics(double wavelength, double gravity) {
    require(std::isfinite(wavelength) && wavelength > 0.0, "wavelength must be > 0");
    require(std::isfinite(gravity) && gravity > 0.0, "gravity must be > 0");
    const double k = 2.0 * std::numbers::pi / wavelength;
    return {k, std::sqrt(gravity / k)};
}

WaveCase::WaveCase(double wavelength, double height, double force_amplitude, double gravity)
    : wavelength_(wavelength),
      height_(height),
      force_amplitude_(force_amplitude),
      gravity_(gravity),
      kinematics_(wave_kinematics(wavelength, gravity)) {
    require(std::isfinite(height) && height >= 0.0, "wave height must be >= 0");
    require(std::isfinite(force_amplitude) && force_amplitude >= 0.0,
            "wave force amplitude must be >= 0");
}

WaveCase WaveCase::with_force_amplitude(double f) const {
    return WaveCase(wavelength_, height_, f, gravity_);
}

WaveCase WaveCase::with_height(double height) const {
    return WaveCase(wavelength_, height, force_amplitude_, gravity_);
}

double effective_thrust(const ThrustModel& model, const ShipPropulsion& ship, double u, double n) {
    if (n == 0.0 && model.has_inverse_rate_terms()) {
        throw OutOfModelRange("K_T terms above J^2 scale as n^(2-i) and are undefined at n = 0");
    }
    double thrust = 0.0;
    for (int i = 0; i <= model.degree(); ++i) {
        if (model.kappa(i) == 0.0) continue;
        thrust += model.tau(i, ship) * integer_power(n, 2 - i) * integer_power(u, i);
    }
    return thrust;
}

double effective_thrust_rate_derivative(const ThrustModel& model, const ShipPropulsion& ship,
                                        double u, double n) {
    if (n == 0.0 && model.has_inverse_rate_terms()) {
        throw OutOfModelRange("K_T terms above J^2 scale as n^(2-i) and are undefined at n = 0");
    }
    double slope = 0.0;
    for (int i = 0; i <= model.degree(); ++i) {
        if (model.kappa(i) == 0.0 || i == 2) continue;
        slope += (2 - i) * model.tau(i, ship) * integer_power(n, 1 - i) * integer_power(u, i);
    }
    return slope;
}

}  // namespace surfride
