#include "surfride/melnikov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "surfride/error.hpp"

namespace surfride {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kTabulatedMoments = 12;

// I_0 = 2 pi, I_1 = 4, I_j = (j - 1) / j * I_{j-2}: the half-integer Gamma
// ratios in closed form.
std::array<double, kTabulatedMoments + 1> make_moment_table() {
    std::array<double, kTabulatedMoments + 1> table{};
    table[0] = 2.0 * kPi;
    table[1] = 4.0;
    for (int j = 2; j <= kTabulatedMoments; ++j) {
        table[static_cast<std::size_t>(j)] =
            static_cast<double>(j - 1) / j * table[static_cast<std::size_t>(j - 2)];
    }
    return table;
}

int expansion_degree(const MelnikovProblem& p) {
    return std::max(p.resistance().degree(), p.thrust().degree());
}

}  // namespace

double orbit_moment(int j) {
    if (j < 0) throw ValidationError("orbit moment index must be >= 0");
    static const auto table = make_moment_table();
    if (j <= kTabulatedMoments) return table[static_cast<std::size_t>(j)];
    return 2.0 * std::sqrt(kPi) * std::exp(std::lgamma(0.5 * (j + 1)) - std::lgamma(0.5 * j + 1.0));
}

MelnikovProblem::MelnikovProblem(ShipPropulsion ship, WaveCase wave, PolynomialCurve resistance,
                                 ThrustModel thrust)
    : ship_(std::move(ship)),
      wave_(std::move(wave)),
      resistance_(std::move(resistance)),
      thrust_(std::move(thrust)) {
    ship_.validate();
    if (!(wave_.force_amplitude() > 0.0)) {
        throw ValidationError("Melnikov problem needs a positive wave force amplitude f");
    }
    speed_scale_ = std::sqrt(wave_.force_amplitude() / (wave_.wave_number() * ship_.total_mass()));
    if (!(speed_scale_ > 0.0) || !std::isfinite(speed_scale_)) {
        throw ValidationError("orbit speed scale is not positive");
    }
}

double speed_moment(const MelnikovProblem& p, int i) {
    if (i < 0) throw ValidationError("speed moment index must be >= 0");
    const double cw = p.celerity();
    const double s = p.orbit_speed_scale();
    double sum = 0.0;
    for (int j = 0; j <= i; ++j) {
        sum += binomial(i, j) * integer_power(cw, i - j) * integer_power(-2.0 * s, j) *
               orbit_moment(j);
    }
    return sum / (2.0 * kPi);
}

double expected_resistance(const MelnikovProblem& p) {
    double sum = 0.0;
    for (int i = 0; i <= p.resistance().degree(); ++i) {
        const double r = p.resistance().coefficient(i);
        if (r != 0.0) sum += r * speed_moment(p, i);
    }
    return sum;
}

double expected_thrust(const MelnikovProblem& p, double n) {
    const auto& model = p.thrust();
    if (n == 0.0 && model.has_inverse_rate_terms()) {
        throw OutOfModelRange("K_T terms above J^2 scale as n^(2-i) and are undefined at n = 0");
    }
    double sum = 0.0;
    for (int i = 0; i <= model.degree(); ++i) {
        if (model.kappa(i) == 0.0) continue;
        sum += model.tau(i, p.ship()) * integer_power(n, 2 - i) * speed_moment(p, i);
    }
    return sum;
}

double melnikov_residual(const MelnikovProblem& p, double n) {
    return (expected_thrust(p, n) - expected_resistance(p)) / p.force_amplitude();
}

double melnikov_residual_derivative(const MelnikovProblem& p, double n) {
    const auto& model = p.thrust();
    if (n == 0.0 && model.has_inverse_rate_terms()) {
        throw OutOfModelRange("K_T terms above J^2 scale as n^(2-i) and are undefined at n = 0");
    }
    double sum = 0.0;
    for (int i = 0; i <= model.degree(); ++i) {
        if (model.kappa(i) == 0.0 || i == 2) continue;
        sum += (2 - i) * model.tau(i, p.ship()) * integer_power(n, 1 - i) * speed_moment(p, i);
    }
    return sum / p.force_amplitude();
}

double damping_coefficient(const MelnikovProblem& p, int i, double n) {
    const auto& model = p.thrust();
    double thrust_part = 0.0;
    if (model.kappa(i) != 0.0) {
        if (n == 0.0 && i > 2) {
            throw OutOfModelRange("c_i(n) with i > 2 is undefined at n = 0");
        }
        thrust_part = model.tau(i, p.ship()) * integer_power(n, 2 - i);
    }
    return p.resistance().coefficient(i) - thrust_part;
}

double melnikov_residual_double_sum(const MelnikovProblem& p, double n) {
    const double f = p.force_amplitude();
    const double k = p.wave_number();
    const double M = p.ship().total_mass();
    const double cw = p.celerity();
    const double lhs = 2.0 * kPi *
                       (effective_thrust(p.thrust(), p.ship(), cw, n) - p.resistance()(cw)) / f;
    double rhs = 0.0;
    for (int i = 1; i <= expansion_degree(p); ++i) {
        const double ci = damping_coefficient(p, i, n);
        if (ci == 0.0) continue;
        for (int j = 1; j <= i; ++j) {
            const double cij = ci / (f * integer_power(k, j)) * binomial(i, j) *
                               std::pow(f * k, 0.5 * j) / std::pow(M, 0.5 * j) *
                               integer_power(cw, i - j);
            rhs += cij * integer_power(-2.0, j) * orbit_moment(j);
        }
    }
    return (lhs - rhs) / (2.0 * kPi);
}

double melnikov_residual_quadratic_expansion(const MelnikovProblem& p, double n) {
    if (!p.thrust().is_quadratic()) {
        throw ValidationError("term-by-term expansion needs a quadratic K_T");
    }
    const double f = p.force_amplitude();
    const double k = p.wave_number();
    const double M = p.ship().total_mass();
    const double cw = p.celerity();
    const auto& r = p.resistance();
    const double tau1 = p.thrust().tau(1, p.ship());
    const double tau2 = p.thrust().tau(2, p.ship());

    auto weight = [&](int i, int j) {
        return 1.0 / (f * integer_power(k, j)) * binomial(i, j) * std::pow(f * k, 0.5 * j) /
               std::pow(M, 0.5 * j) * integer_power(cw, i - j) * integer_power(-2.0, j) *
               orbit_moment(j);
    };

    double rhs = 8.0 * (tau1 * n - r.coefficient(1)) / std::sqrt(f * k * M);
    for (int j = 1; j <= 2; ++j) rhs += (r.coefficient(2) - tau2) * weight(2, j);
    for (int i = 3; i <= r.degree(); ++i) {
        for (int j = 1; j <= i; ++j) rhs += r.coefficient(i) * weight(i, j);
    }
    const double lhs = 2.0 * kPi *
                       (effective_thrust(p.thrust(), p.ship(), cw, n) - r(cw)) / f;
    return (lhs - rhs) / (2.0 * kPi);
}

UniquenessCertificate uniqueness_certificate(const MelnikovProblem& p) {
    UniquenessCertificate c;
    c.expected_resistance = expected_resistance(p);
    c.resistance_integral_positive = c.expected_resistance > 0.0;
    if (p.thrust().is_quadratic()) {
        c.tau2_mean_square_speed = p.thrust().tau(2, p.ship()) * speed_moment(p, 2);
        c.rtcond = c.expected_resistance > *c.tau2_mean_square_speed;
    }
    c.min_orbit_speed = p.celerity() - 2.0 * p.orbit_speed_scale();
    c.mean_speed = speed_moment(p, 1);
    const double weight = p.ship().total_mass() * p.wave().gravity();
    c.u_positive_limit = 0.25 * weight;
    c.mean_speed_limit = kPi * kPi / 16.0 * weight;
    c.u_positive_bound = p.force_amplitude() < c.u_positive_limit;
    c.mean_speed_bound = p.force_amplitude() < c.mean_speed_limit;
    return c;
}

const char* to_string(SolveMethod method) {
    switch (method) {
        case SolveMethod::ClosedForm:
            return "closed-form";
        case SolveMethod::Bisection:
            return "bisection";
    }
    return "unknown";
}

namespace {

ThresholdReport base_report(const MelnikovProblem& p, SolveMethod method) {
    ThresholdReport r;
    r.method = method;
    r.tau0 = p.thrust().tau(0, p.ship());
    r.tau1 = p.thrust().tau(1, p.ship());
    r.tau2 = p.thrust().tau(2, p.ship());
    r.celerity = p.celerity();
    r.wave_number = p.wave_number();
    r.force_amplitude = p.force_amplitude();
    r.orbit_speed_scale = p.orbit_speed_scale();
    r.mean_speed = speed_moment(p, 1);
    r.mean_square_speed = speed_moment(p, 2);
    r.expected_resistance = expected_resistance(p);
    r.certificate = uniqueness_certificate(p);
    r.rtcond_satisfied = r.certificate.rtcond.value_or(false);
    r.notes.emplace_back("lower surf-riding threshold: heteroclinic bifurcation at the lower "
                         "propeller rate; the upper threshold is not computed");
    return r;
}

double stationary_point(const ThresholdReport& r) {
    return r.tau0 > 0.0 ? -r.tau1 * r.mean_speed / (2.0 * r.tau0) : 0.0;
}

}  // namespace

ThresholdReport solve_threshold_quadratic(const MelnikovProblem& p) {
    if (!p.thrust().is_quadratic()) {
        throw ValidationError("closed-form threshold needs a quadratic K_T");
    }
    p.thrust().require_quadratic_signs();
    ThresholdReport r = base_report(p, SolveMethod::ClosedForm);
    r.residual_tolerance = SolverOptions{}.residual_tolerance;
    r.branch_start = std::max(0.0, stationary_point(r));

    const double a = r.tau0;
    const double b = r.tau1 * r.mean_speed;
    const double c = r.tau2 * r.mean_square_speed - r.expected_resistance;
    const double disc = b * b - 4.0 * a * c;
    r.discriminant = disc;

    if (!r.rtcond_satisfied) {
        std::ostringstream note;
        note << "root condition violated: E[R(u)] = " << r.expected_resistance
             << " <= tau_2 E[u^2] = " << r.tau2 * r.mean_square_speed
             << "; no physical threshold is reported";
        if (disc >= 0.0) {
            const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
            note << " (real roots " << q / a << ", " << (q != 0.0 ? c / q : 0.0) << ")";
        }
        r.notes.push_back(note.str());
        return r;
    }

    // c < 0 here, so disc > b^2 and the roots have opposite signs.
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    const double r1 = q / a;
    const double r2 = c / q;
    r.n_cr_positive = std::max(r1, r2);
    r.n_cr_negative = std::min(r1, r2);
    r.residual = melnikov_residual(p, *r.n_cr_positive);
    r.notes.emplace_back("negative root corresponds to adverse propeller rotation and is "
                         "reported as a non-physical diagnostic");
    return r;
}

ThresholdReport solve_threshold_general(const MelnikovProblem& p,
                                        std::optional<RateRange> bracket_hint,
                                        const SolverOptions& options) {
    ThresholdReport r = base_report(p, SolveMethod::Bisection);
    r.residual_tolerance = options.residual_tolerance;
    auto residual = [&p](double n) { return melnikov_residual(p, n); };

    const double scale = r.tau0 > 0.0 && r.expected_resistance > 0.0
                             ? std::sqrt(r.expected_resistance / r.tau0)
                             : 1.0;
    double lo = std::max(0.0, stationary_point(r));
    if (lo == 0.0 && p.thrust().has_inverse_rate_terms()) lo = 1e-6 * scale;
    double hi = std::max({2.0 * lo, scale, 1e-3});
    if (bracket_hint) {
        if (!(bracket_hint->upper > bracket_hint->lower) || bracket_hint->lower < 0.0) {
            throw ValidationError("bracket hint must satisfy 0 <= lower < upper");
        }
        lo = std::max(lo, bracket_hint->lower);
        hi = std::max(hi, bracket_hint->upper);
        if (lo == 0.0 && p.thrust().has_inverse_rate_terms()) lo = 1e-6 * hi;
    }
    r.branch_start = lo;

    double r_lo = residual(lo);
    if (r_lo > 0.0) {
        throw NonMonotonicResidual(
            "residual is already positive at the start of the physical branch (n = " +
            std::to_string(lo) +
            "): thrust does not take a negative finite value as n -> 0, so the model violates "
            "the monotone-thrust property the uniqueness argument relies on");
    }
    const double start = lo;
    if (r_lo == 0.0) {
        hi = lo;
    } else {
        while (residual(hi) <= 0.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > options.max_rate) {
                throw NoThresholdError("thrust never overcomes the orbit-averaged resistance "
                                       "below n = " + std::to_string(options.max_rate) + " 1/s");
            }
        }
    }
    const double search_top = hi;

    int iterations = 0;
    while (hi - lo > options.polish_switch * hi && iterations < options.max_iterations) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? hi : lo) = mid;
        ++iterations;
    }
    double x = 0.5 * (lo + hi);
    while (hi - lo > 0.0 && iterations < options.max_iterations) {
        ++iterations;
        const double fx = residual(x);
        if (fx == 0.0) break;
        (fx > 0.0 ? hi : lo) = x;
        const double slope = melnikov_residual_derivative(p, x);
        double next = slope > 0.0 ? x - fx / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const bool done = std::abs(next - x) <= options.relative_tolerance * std::abs(next) ||
                          hi - lo <= options.relative_tolerance * hi;
        x = next;
        if (done) break;
    }
    if (iterations >= options.max_iterations) {
        throw SolverError("threshold iteration did not converge");
    }

    const int samples = search_top > start ? std::max(options.monotonicity_samples, 2) : 0;
    double previous = residual(start);
    for (int i = 1; i <= samples; ++i) {
        const double n = start + (search_top - start) * i / samples;
        const double value = residual(n);
        if (!(value > previous)) {
            throw NonMonotonicResidual("residual is not increasing on the physical branch near n = " +
                                       std::to_string(n) +
                                       ": thrust integral must grow monotonically with n");
        }
        previous = value;
    }

    r.n_cr_positive = x;
    r.residual = residual(x);
    r.bracket = RateRange{start, search_top};
    r.iterations = iterations;
    if (std::abs(r.residual) > options.residual_tolerance) {
        throw SolverError("residual at the returned root exceeds tolerance");
    }
    return r;
}

}  // namespace surfride
