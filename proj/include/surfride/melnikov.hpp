/**
 * @file melnikov.hpp
 * @brief Melnikov balance for the lower surf-riding threshold n_cr.
 *
 * Along the unperturbed heteroclinic orbit dy/dtau = -2 cos(y / 2) the
 * forward speed is u(y) = c_w - 2 s cos(y / 2) with s = sqrt(f / (k (m + m_x))).
 * The threshold is where the orbit-averaged thrust balances the
 * orbit-averaged resistance:
 *
 *   E[T_e(u; n)] = E[R(u)],   E[g] = (1 / 2 pi) int_{-pi}^{pi} g(u(y)) dy.
 *
 * Every residual here is that balance divided by f.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "surfride/core.hpp"
#include "surfride/hydro.hpp"

namespace surfride {

/// I_j = int_{-pi}^{pi} cos^j(y / 2) dy = 2 sqrt(pi) Gamma((j + 1) / 2) / Gamma(j / 2 + 1).
double orbit_moment(int j);

class MelnikovProblem {
public:
    MelnikovProblem(ShipPropulsion ship, WaveCase wave, PolynomialCurve resistance,
                    ThrustModel thrust);

    const ShipPropulsion& ship() const { return ship_; }
    const WaveCase& wave() const { return wave_; }
    const PolynomialCurve& resistance() const { return resistance_; }
    const ThrustModel& thrust() const { return thrust_; }

    double force_amplitude() const { return wave_.force_amplitude(); }
    double wave_number() const { return wave_.wave_number(); }
    double celerity() const { return wave_.celerity(); }
    /// s = sqrt(f / (k (m + m_x))) [m/s].
    double orbit_speed_scale() const { return speed_scale_; }

private:
    ShipPropulsion ship_;
    WaveCase wave_;
    PolynomialCurve resistance_;
    ThrustModel thrust_;
    double speed_scale_ = 0.0;
};

/// E[u^i] along the orbit, in closed form through orbit_moment().
double speed_moment(const MelnikovProblem& problem, int i);
double expected_resistance(const MelnikovProblem& problem);
/// E[T_e(u; n)]. Throws OutOfModelRange at n = 0 for K_T above J^2.
double expected_thrust(const MelnikovProblem& problem, double n);

/// (E[T_e(u; n)] - E[R(u)]) / f, assembled from the speed moments.
double melnikov_residual(const MelnikovProblem& problem, double n);
double melnikov_residual_derivative(const MelnikovProblem& problem, double n);

/// c_i(n) = r_i - tau_i n^(2-i): coefficient of u^i in R(u) - T_e(u; n).
double damping_coefficient(const MelnikovProblem& problem, int i, double n);

/**
 * Same residual assembled the other way round: the double sum
 * sum_{i>=1} sum_{j=1..i} C_ij (-2)^j I_j with
 * C_ij = c_i binom(i, j) c_w^(i-j) s^j / f, subtracted from
 * 2 pi (T_e(c_w; n) - R(c_w)) / f, then divided by 2 pi.
 */
double melnikov_residual_double_sum(const MelnikovProblem& problem, double n);

/**
 * Quadratic-K_T expansion of the double sum written term by term: the
 * i = 1 term 8 (tau_1 n - r_1) / sqrt(f k (m + m_x)), the i = 2 sum with
 * (r_2 - tau_2), and the pure-resistance terms for i >= 3. Requires a
 * quadratic thrust model.
 */
double melnikov_residual_quadratic_expansion(const MelnikovProblem& problem, double n);

struct UniquenessCertificate {
    double expected_resistance = 0.0;
    /// tau_2 E[u^2]; only meaningful for quadratic K_T.
    std::optional<double> tau2_mean_square_speed;
    /// E[R] > tau_2 E[u^2]; empty when K_T is not quadratic.
    std::optional<bool> rtcond;
    /// E[R] > 0, the necessary condition for rtcond.
    bool resistance_integral_positive = false;
    double min_orbit_speed = 0.0;  ///< c_w - 2 s
    double mean_speed = 0.0;       ///< E[u]
    double u_positive_limit = 0.0;  ///< (m + m_x) g / 4
    bool u_positive_bound = false;
    double mean_speed_limit = 0.0;  ///< (pi^2 / 16)(m + m_x) g
    bool mean_speed_bound = false;
};

UniquenessCertificate uniqueness_certificate(const MelnikovProblem& problem);

enum class SolveMethod { ClosedForm, Bisection };
const char* to_string(SolveMethod method);

struct RateRange {
    double lower = 0.0;
    double upper = 0.0;
};

struct SolverOptions {
    double relative_tolerance = 1e-12;
    /// Bracket width (relative) at which Newton polishing takes over.
    double polish_switch = 1e-6;
    /// Largest rate tried while expanding the upper bracket [1/s].
    double max_rate = 1e4;
    int max_iterations = 400;
    int monotonicity_samples = 32;
    /// |residual| accepted at a returned root.
    double residual_tolerance = 1e-9;
};

struct ThresholdReport {
    SolveMethod method = SolveMethod::ClosedForm;
    /// The lower surf-riding threshold (heteroclinic bifurcation), if physical.
    std::optional<double> n_cr_positive;
    /// Negative quadratic root: adverse propeller rotation, diagnostic only.
    std::optional<double> n_cr_negative;
    bool rtcond_satisfied = false;
    double residual = 0.0;
    double residual_tolerance = 0.0;
    std::optional<double> discriminant;

    // Intermediate quantities for audit.
    double tau0 = 0.0;
    double tau1 = 0.0;
    double tau2 = 0.0;
    double celerity = 0.0;
    double wave_number = 0.0;
    double force_amplitude = 0.0;
    double orbit_speed_scale = 0.0;
    double mean_speed = 0.0;
    double mean_square_speed = 0.0;
    double expected_resistance = 0.0;
    /// Lower end of the physical branch (thrust-integral stationary point or 0+).
    double branch_start = 0.0;
    std::optional<RateRange> bracket;
    int iterations = 0;

    UniquenessCertificate certificate;
    std::optional<ValidityAssessment> validity;
    std::vector<std::string> notes;
};

/// Closed-form root of tau_0 n^2 + tau_1 E[u] n + (tau_2 E[u^2] - E[R]) = 0.
ThresholdReport solve_threshold_quadratic(const MelnikovProblem& problem);

/// Bracketed bisection with Newton polish on the physical branch; any K_T degree.
ThresholdReport solve_threshold_general(const MelnikovProblem& problem,
                                        std::optional<RateRange> bracket_hint = std::nullopt,
                                        const SolverOptions& options = {});

}  // namespace surfride
