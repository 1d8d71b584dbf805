/**
 * @file dynamics.hpp
 * @brief Time-domain surge model used as an independent check on the
 *        Melnikov estimate.
 *
 * (m + m_x) xi'' + R(u) - T_e(u; n) + f sin(k xi) = 0,  u = c_w + xi'.
 *
 * Time is reported in units of the wave-force time scale
 * 1 / sqrt(f k / (m + m_x)); the integrator is fixed-step RK4.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "surfride/core.hpp"
#include "surfride/melnikov.hpp"

namespace surfride {

/// Position of the centre of gravity relative to a wave trough and its rate.
struct SurgeState {
    double position = 0.0;  ///< xi_G [m]
    double velocity = 0.0;  ///< d xi_G / dt [m/s]

    /// u = c_w + xi_G'.
    double speed(double celerity) const { return celerity + velocity; }
};

/// The surge equation with every constant bound, at a fixed propeller rate.
class SurgeModel {
public:
    SurgeModel(ShipPropulsion ship, WaveCase wave, PolynomialCurve resistance, ThrustModel thrust,
               double rate);

    const ShipPropulsion& ship() const { return ship_; }
    const WaveCase& wave() const { return wave_; }
    const PolynomialCurve& resistance() const { return resistance_; }
    const ThrustModel& thrust() const { return thrust_; }
    double rate() const { return rate_; }
    SurgeModel with_rate(double rate) const;

    /// T_e(u; n) - R(u).
    double net_force(double u) const;
    /// d(T_e - R)/du.
    double net_force_slope(double u) const;
    /// (xi', xi'').
    SurgeState derivative(const SurgeState& state) const;
    /// sqrt(f k / (m + m_x)) [1/s]; converts nondimensional time to seconds.
    double frequency() const { return frequency_; }
    /// (T_e(c_w; n) - R(c_w)) / f: the constant part of the forcing.
    double static_forcing() const;
    /// 1/2 (m + m_x) xi'^2 - (f / k) cos(k xi).
    double energy(const SurgeState& state) const;

private:
    ShipPropulsion ship_;
    WaveCase wave_;
    PolynomialCurve resistance_;
    ThrustModel thrust_;
    double rate_ = 0.0;
    double frequency_ = 0.0;
    // Thrust polynomial in u at this rate, sum tau_i n^(2-i) u^i.
    PolynomialCurve thrust_in_speed_;
};

SurgeState surge_derivative(const SurgeState& state, const ShipPropulsion& ship,
                            const WaveCase& wave, const PolynomialCurve& resistance,
                            const ThrustModel& thrust, double rate);

/// One classical RK4 step of dt seconds.
SurgeState rk4_step(const SurgeModel& model, const SurgeState& state, double dt);

struct TrajectorySample {
    double time = 0.0;  ///< nondimensional
    SurgeState state;
};

/// Integrates for `duration` nondimensional units with step `step`, keeping every `stride`-th point.
std::vector<TrajectorySample> integrate(const SurgeModel& model, SurgeState initial,
                                        double duration, double step, int stride = 1);

/// Columnar dump: t xi_G xi_G_dot u.
void write_trajectory(std::ostream& out, const SurgeModel& model,
                      std::span<const TrajectorySample> trajectory);

enum class Stability { Stable, Saddle, Unstable };
const char* to_string(Stability stability);

struct EquilibriumPoint {
    double position = 0.0;  ///< xi_G,SR [m], within (-lambda/2, lambda/2]
    Stability stability = Stability::Stable;
    int branch = 0;  ///< wave index l; the returned points all use l = 0
    /// Jacobian eigenvalues (real, imaginary parts) in 1/s.
    double eigen_real[2] = {0.0, 0.0};
    double eigen_imag[2] = {0.0, 0.0};
};

/// Surf-riding equilibria of one wave length; empty when |T_e(c_w) - R(c_w)| > f.
std::vector<EquilibriumPoint> find_equilibria(const SurgeModel& model);

/// Phase-plane grid of initial states.
struct GridSpec {
    int positions = 16;
    int speeds = 9;
    /// Relative speed range as fractions of c_w.
    double speed_min = -0.8;
    double speed_max = 0.4;
};

std::vector<SurgeState> standard_grid(const WaveCase& wave, const GridSpec& spec = {});

enum class CaptureLabel { Captured, Surging, Undecided };
const char* to_string(CaptureLabel label);

struct CaptureOptions {
    double horizon = 200.0;       ///< nondimensional time
    double step = 0.02;           ///< nondimensional RK4 step
    double speed_tolerance = 0.01;     ///< |u - c_w| < tol * c_w
    double position_tolerance = 0.02;  ///< |xi - xi_SR| < tol * lambda
    double dwell = 5.0;           ///< nondimensional time the band must hold
    int surging_cycles = 2;       ///< wavelengths passed before a surging verdict
    /// Successive section-crossing speeds must agree to this fraction of c_w.
    double cycle_convergence = 1e-7;
    /// Require the dwell point to lie below the lowest saddle energy of its well.
    bool energy_trap = true;
};

struct CaptureResult {
    std::vector<CaptureLabel> labels;
    double captured_fraction = 0.0;
    int captured = 0;
    int surging = 0;
    int undecided = 0;
    std::int64_t steps = 0;
};

CaptureResult classify_capture(const SurgeModel& model, std::span<const SurgeState> grid,
                               const CaptureOptions& options = {});

struct OracleOptions {
    GridSpec grid;
    CaptureOptions capture;
    /// Stop once (upper - lower) <= tolerance * upper.
    double relative_tolerance = 1e-5;
    int max_expansions = 30;
    int max_iterations = 200;
    /// Undecided probes are retried with the horizon doubled, at most this many times.
    int horizon_doublings = 3;
};

struct OracleProbe {
    double rate = 0.0;
    double captured_fraction = 0.0;
    int surging = 0;
    int undecided = 0;
    bool all_captured = false;
};

struct OracleResult {
    double n_cr = 0.0;
    double lower = 0.0;  ///< largest rate with some escaping initial condition
    double upper = 0.0;  ///< smallest rate with every initial condition captured
    double bracket_width = 0.0;
    std::vector<OracleProbe> probes;
    std::int64_t total_steps = 0;
    int grid_size = 0;
};

/**
 * Rates where T_e(c_w; n) - R(c_w) = -f (equilibria appear) and = 0: the
 * heteroclinic threshold lies between them for a dissipative hull.
 */
RateRange equilibrium_rate_range(const ShipPropulsion& ship, const WaveCase& wave,
                                 const PolynomialCurve& resistance, const ThrustModel& thrust);

/// Bisects n between "some grid state escapes" and "every grid state is captured".
OracleResult oracle_threshold(const ShipPropulsion& ship, const WaveCase& wave,
                              const PolynomialCurve& resistance, const ThrustModel& thrust,
                              std::optional<RateRange> range, const OracleOptions& options = {},
                              std::span<const SurgeState> grid = {});

}  // namespace surfride
