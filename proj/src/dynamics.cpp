#include "surfride/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "surfride/error.hpp"
#include "parallel.hpp"

namespace surfride {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

PolynomialCurve thrust_polynomial(const ThrustModel& thrust, const ShipPropulsion& ship, double n) {
    if (n == 0.0 && thrust.has_inverse_rate_terms()) {
        throw OutOfModelRange("K_T terms above J^2 scale as n^(2-i) and are undefined at n = 0");
    }
    std::vector<double> c(static_cast<std::size_t>(thrust.degree()) + 1, 0.0);
    for (int i = 0; i <= thrust.degree(); ++i) {
        if (thrust.kappa(i) != 0.0) {
            c[static_cast<std::size_t>(i)] = thrust.tau(i, ship) * integer_power(n, 2 - i);
        }
    }
    return PolynomialCurve(std::move(c), 0.0, true);
}

double polynomial_slope(const PolynomialCurve& p, double x) {
    double acc = 0.0;
    for (int i = p.degree(); i >= 1; --i) acc = acc * x + i * p.coefficient(i);
    return acc;
}

// Wraps an angle into (-pi, pi].
double wrap_angle(double y) {
    y = std::remainder(y, kTwoPi);
    return y <= -std::numbers::pi ? y + kTwoPi : y;
}

// Smallest n on the rising branch where T_e(c_w; n) - R(c_w) reaches target.
double rate_for_static_force(const ShipPropulsion& ship, const WaveCase& wave,
                             const PolynomialCurve& resistance, const ThrustModel& thrust,
                             double target) {
    const double cw = wave.celerity();
    auto g = [&](double n) {
        return effective_thrust(thrust, ship, cw, n) - resistance(cw) - target;
    };
    const double tau0 = thrust.tau(0, ship);
    double lo = tau0 > 0.0 ? std::max(0.0, -thrust.tau(1, ship) * cw / (2.0 * tau0)) : 0.0;
    if (lo == 0.0 && thrust.has_inverse_rate_terms()) lo = 1e-6;
    if (g(lo) > 0.0) return lo;
    double hi = std::max(2.0 * lo, 1.0);
    while (g(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw OracleError("thrust never reaches the required static balance");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

SurgeModel::SurgeModel(ShipPropulsion ship, WaveCase wave, PolynomialCurve resistance,
                       ThrustModel thrust, double rate)
    : ship_(std::move(ship)),
      wave_(std::move(wave)),
      resistance_(std::move(resistance)),
      thrust_(std::move(thrust)),
      rate_(rate),
      thrust_in_speed_(thrust_polynomial(thrust_, ship_, rate)) {
    ship_.validate();
    frequency_ = std::sqrt(wave_.force_amplitude() * wave_.wave_number() / ship_.total_mass());
}

SurgeModel SurgeModel::with_rate(double rate) const {
    return SurgeModel(ship_, wave_, resistance_, thrust_, rate);
}

double SurgeModel::net_force(double u) const { return thrust_in_speed_(u) - resistance_(u); }

double SurgeModel::net_force_slope(double u) const {
    return polynomial_slope(thrust_in_speed_, u) - polynomial_slope(resistance_, u);
}

SurgeState SurgeModel::derivative(const SurgeState& s) const {
    const double u = wave_.celerity() + s.velocity;
    const double wave_force = wave_.force_amplitude() * std::sin(wave_.wave_number() * s.position);
    return {s.velocity, (net_force(u) - wave_force) / ship_.total_mass()};
}

double SurgeModel::static_forcing() const {
    return net_force(wave_.celerity()) / wave_.force_amplitude();
}

double SurgeModel::energy(const SurgeState& s) const {
    return 0.5 * ship_.total_mass() * s.velocity * s.velocity -
           wave_.force_amplitude() / wave_.wave_number() * std::cos(wave_.wave_number() * s.position);
}

SurgeState surge_derivative(const SurgeState& state, const ShipPropulsion& ship,
                            const WaveCase& wave, const PolynomialCurve& resistance,
                            const ThrustModel& thrust, double rate) {
    return SurgeModel(ship, wave, resistance, thrust, rate).derivative(state);
}

SurgeState rk4_step(const SurgeModel& model, const SurgeState& s, double dt) {
    const auto k1 = model.derivative(s);
    const auto k2 = model.derivative({s.position + 0.5 * dt * k1.position,
                                      s.velocity + 0.5 * dt * k1.velocity});
    const auto k3 = model.derivative({s.position + 0.5 * dt * k2.position,
                                      s.velocity + 0.5 * dt * k2.velocity});
    const auto k4 =
        model.derivative({s.position + dt * k3.position, s.velocity + dt * k3.velocity});
    return {s.position + dt / 6.0 * (k1.position + 2.0 * k2.position + 2.0 * k3.position + k4.position),
            s.velocity + dt / 6.0 * (k1.velocity + 2.0 * k2.velocity + 2.0 * k3.velocity + k4.velocity)};
}

std::vector<TrajectorySample> integrate(const SurgeModel& model, SurgeState initial,
                                        double duration, double step, int stride) {
    if (!(model.frequency() > 0.0)) throw ValidationError("integration needs f > 0");
    if (!(step > 0.0) || !(duration >= 0.0)) throw ValidationError("bad integration step/duration");
    stride = std::max(stride, 1);
    const auto steps = static_cast<std::int64_t>(std::ceil(duration / step - 1e-9));
    const double dt = step / model.frequency();
    std::vector<TrajectorySample> out;
    out.reserve(static_cast<std::size_t>(steps / stride + 2));
    out.push_back({0.0, initial});
    SurgeState s = initial;
    for (std::int64_t i = 1; i <= steps; ++i) {
        s = rk4_step(model, s, dt);
        if (i % stride == 0 || i == steps) out.push_back({static_cast<double>(i) * step, s});
    }
    return out;
}

void write_trajectory(std::ostream& out, const SurgeModel& model,
                      std::span<const TrajectorySample> trajectory) {
    out << "# t xi_G xi_G_dot u\n# units: - m m/s m/s (t in units of 1/sqrt(f k / (m + m_x)))\n";
    out.precision(12);
    for (const auto& p : trajectory) {
        out << p.time << ' ' << p.state.position << ' ' << p.state.velocity << ' '
            << p.state.speed(model.wave().celerity()) << '\n';
    }
}

const char* to_string(Stability stability) {
    switch (stability) {
        case Stability::Stable:
            return "stable";
        case Stability::Saddle:
            return "saddle";
        case Stability::Unstable:
            return "unstable";
    }
    return "unknown";
}

std::vector<EquilibriumPoint> find_equilibria(const SurgeModel& model) {
    const auto& wave = model.wave();
    const double f = wave.force_amplitude();
    if (!(f > 0.0)) return {};
    const double imbalance = model.net_force(wave.celerity());
    if (std::abs(imbalance) > f) return {};

    const double k = wave.wave_number();
    const double M = model.ship().total_mass();
    const double phase = std::asin(std::clamp(imbalance / f, -1.0, 1.0));
    // d xi''/d xi' = (dT_e/du - dR/du) / M at u = c_w.
    const double slope = model.net_force_slope(wave.celerity());
    const double trace = slope / M;

    std::vector<EquilibriumPoint> out;
    for (double y : {phase, std::numbers::pi - phase}) {
        EquilibriumPoint e;
        e.position = wrap_angle(y) / k;
        e.branch = 0;
        const double det = f * k / M * std::cos(y);
        const double disc = trace * trace - 4.0 * det;
        if (disc >= 0.0) {
            e.eigen_real[0] = 0.5 * (trace - std::sqrt(disc));
            e.eigen_real[1] = 0.5 * (trace + std::sqrt(disc));
        } else {
            e.eigen_real[0] = e.eigen_real[1] = 0.5 * trace;
            e.eigen_imag[0] = -0.5 * std::sqrt(-disc);
            e.eigen_imag[1] = 0.5 * std::sqrt(-disc);
        }
        if (det <= 0.0) {
            e.stability = Stability::Saddle;
        } else {
            e.stability = trace < 0.0 ? Stability::Stable : Stability::Unstable;
        }
        out.push_back(e);
    }
    return out;
}

std::vector<SurgeState> standard_grid(const WaveCase& wave, const GridSpec& spec) {
    if (spec.positions < 1 || spec.speeds < 1) throw ValidationError("grid needs >= 1 point per axis");
    std::vector<SurgeState> grid;
    grid.reserve(static_cast<std::size_t>(spec.positions * spec.speeds));
    const double lambda = wave.wavelength();
    const double cw = wave.celerity();
    for (int i = 0; i < spec.positions; ++i) {
        const double x = -0.5 * lambda + lambda * i / spec.positions;
        for (int j = 0; j < spec.speeds; ++j) {
            const double frac =
                spec.speeds == 1 ? spec.speed_min
                                 : spec.speed_min + (spec.speed_max - spec.speed_min) * j / (spec.speeds - 1);
            grid.push_back({x, frac * cw});
        }
    }
    return grid;
}

const char* to_string(CaptureLabel label) {
    switch (label) {
        case CaptureLabel::Captured:
            return "captured";
        case CaptureLabel::Surging:
            return "surging";
        case CaptureLabel::Undecided:
            return "undecided";
    }
    return "unknown";
}

namespace {

// Nondimensional well geometry around the stable equilibrium.
struct Well {
    bool exists = false;
    double stable_phase = 0.0;  // y_s
    double saddle_phase = 0.0;  // y_b = pi - asin(delta), above y_s
    double forcing = 0.0;       // delta
    double barrier = 0.0;       // lowest saddle energy of the well
    bool dissipative = false;   // ydot * D(ydot) <= 0 over the reachable speeds
    double speed_scale = 0.0;   // s
};

double potential(double y, double delta) { return -std::cos(y) - delta * y; }

Well make_well(const SurgeModel& model) {
    Well w;
    const auto eq = find_equilibria(model);
    const auto stable = std::find_if(eq.begin(), eq.end(), [](const EquilibriumPoint& e) {
        return e.stability == Stability::Stable;
    });
    if (stable == eq.end()) return w;
    const auto& wave = model.wave();
    const double f = wave.force_amplitude();
    const double k = wave.wave_number();
    w.exists = true;
    w.forcing = model.static_forcing();
    w.stable_phase = std::asin(std::clamp(w.forcing, -1.0, 1.0));
    w.saddle_phase = std::numbers::pi - w.stable_phase;
    w.speed_scale = std::sqrt(f / (k * model.ship().total_mass()));
    w.barrier = std::min(potential(w.saddle_phase, w.forcing),
                         potential(w.saddle_phase - kTwoPi, w.forcing));
    const double reach = std::sqrt(std::max(0.0, 2.0 * (w.barrier - potential(w.stable_phase, w.forcing))));
    const double cw = wave.celerity();
    const double base = model.net_force(cw);
    w.dissipative = true;
    constexpr int kChecks = 64;
    for (int i = -kChecks; i <= kChecks; ++i) {
        if (i == 0) continue;
        const double ydot = reach * i / kChecks;
        const double d = (model.net_force(cw + w.speed_scale * ydot) - base) / f;
        if (ydot * d > 0.0) {
            w.dissipative = false;
            break;
        }
    }
    return w;
}

bool trapped(const Well& w, double k, const SurgeState& s) {
    const double y = k * s.position;
    const double left = w.saddle_phase - kTwoPi;
    const double shifted = y - kTwoPi * std::floor((y - left) / kTwoPi);
    const double ydot = s.velocity / w.speed_scale;
    const double energy = 0.5 * ydot * ydot + potential(shifted, w.forcing);
    return energy < w.barrier;
}

struct PointOutcome {
    CaptureLabel label = CaptureLabel::Undecided;
    std::int64_t steps = 0;
};

PointOutcome classify_point(const SurgeModel& model, const Well& well, SurgeState s,
                            const CaptureOptions& opt) {
    const auto& wave = model.wave();
    const double k = wave.wave_number();
    const double lambda = wave.wavelength();
    const double cw = wave.celerity();
    const double dt = opt.step / model.frequency();
    const auto steps = static_cast<std::int64_t>(std::ceil(opt.horizon / opt.step));
    const double stable_position = well.exists ? well.stable_phase / k : 0.0;
    const double section = well.exists ? well.saddle_phase / k : 0.0;

    auto cell = [&](double x) { return std::floor((x - section) / lambda); };
    double current_cell = cell(s.position);
    std::vector<double> crossing_speeds;
    int crossing_direction = 0;
    double dwell_start = -1.0;

    PointOutcome out;
    // Without a stable equilibrium nothing can be captured; near the saddle-node the
    // bottleneck makes the surging cycle arbitrarily slow, so do not wait for it.
    if (!well.exists) {
        out.label = CaptureLabel::Surging;
        return out;
    }
    for (std::int64_t i = 1; i <= steps; ++i) {
        const SurgeState prev = s;
        s = rk4_step(model, s, dt);
        out.steps = i;
        const double t = static_cast<double>(i) * opt.step;

        const double next_cell = cell(s.position);
        if (next_cell != current_cell) {
            const int direction = next_cell > current_cell ? 1 : -1;
            const double boundary = section + lambda * (direction > 0 ? next_cell : current_cell);
            const double w = (boundary - prev.position) / (s.position - prev.position);
            const double v = prev.velocity + w * (s.velocity - prev.velocity);
            if (direction != crossing_direction) crossing_speeds.clear();
            crossing_direction = direction;
            crossing_speeds.push_back(v);
            current_cell = next_cell;
            const auto n = crossing_speeds.size();
            if (static_cast<int>(n) >= opt.surging_cycles + 1 && n >= 3) {
                const double d1 = std::abs(crossing_speeds[n - 1] - crossing_speeds[n - 2]);
                const double d0 = std::abs(crossing_speeds[n - 2] - crossing_speeds[n - 3]);
                if (d1 <= opt.cycle_convergence * cw && (d1 < d0 || d0 == 0.0)) {
                    out.label = CaptureLabel::Surging;
                    return out;
                }
            }
        }

        if (well.exists) {
            const double offset = std::remainder(s.position - stable_position, lambda);
            const bool in_band = std::abs(s.velocity) < opt.speed_tolerance * cw &&
                                 std::abs(offset) < opt.position_tolerance * lambda;
            if (!in_band) {
                dwell_start = -1.0;
            } else if (dwell_start < 0.0) {
                dwell_start = t;
            } else if (t - dwell_start >= opt.dwell) {
                if (!opt.energy_trap || !well.dissipative || trapped(well, k, s)) {
                    out.label = CaptureLabel::Captured;
                    return out;
                }
                dwell_start = t;
            }
        }
    }
    return out;
}

}  // namespace

CaptureResult classify_capture(const SurgeModel& model, std::span<const SurgeState> grid,
                               const CaptureOptions& options) {
    if (grid.empty()) throw ValidationError("capture grid is empty");
    if (!(options.horizon > 0.0) || !(options.step > 0.0)) {
        throw ValidationError("capture horizon and step must be positive");
    }
    if (!(model.frequency() > 0.0)) throw ValidationError("capture classification needs f > 0");
    const Well well = make_well(model);

    std::vector<PointOutcome> outcomes(grid.size());
    detail::parallel_for(grid.size(), [&](std::size_t i) {
        outcomes[i] = classify_point(model, well, grid[i], options);
    });

    CaptureResult result;
    result.labels.reserve(grid.size());
    for (const auto& o : outcomes) {
        result.labels.push_back(o.label);
        result.steps += o.steps;
        switch (o.label) {
            case CaptureLabel::Captured:
                ++result.captured;
                break;
            case CaptureLabel::Surging:
                ++result.surging;
                break;
            case CaptureLabel::Undecided:
                ++result.undecided;
                break;
        }
    }
    result.captured_fraction = static_cast<double>(result.captured) / static_cast<double>(grid.size());
    return result;
}

RateRange equilibrium_rate_range(const ShipPropulsion& ship, const WaveCase& wave,
                                 const PolynomialCurve& resistance, const ThrustModel& thrust) {
    const double f = wave.force_amplitude();
    return {rate_for_static_force(ship, wave, resistance, thrust, -f),
            rate_for_static_force(ship, wave, resistance, thrust, 0.0)};
}

OracleResult oracle_threshold(const ShipPropulsion& ship, const WaveCase& wave,
                              const PolynomialCurve& resistance, const ThrustModel& thrust,
                              std::optional<RateRange> range, const OracleOptions& options,
                              std::span<const SurgeState> grid) {
    std::vector<SurgeState> owned;
    if (grid.empty()) {
        owned = standard_grid(wave, options.grid);
        grid = owned;
    }
    if (grid.size() < 2) {
        throw OracleError("oracle bisection needs a discriminating grid of at least two initial "
                          "states");
    }
    if (!(wave.force_amplitude() > 0.0)) throw ValidationError("oracle needs f > 0");

    OracleResult result;
    result.grid_size = static_cast<int>(grid.size());

    // +1: every state captured, -1: some state escapes.
    auto probe = [&](double n) {
        const SurgeModel model(ship, wave, resistance, thrust, n);
        CaptureOptions capture = options.capture;
        for (int attempt = 0;; ++attempt) {
            const auto c = classify_capture(model, grid, capture);
            result.total_steps += c.steps;
            OracleProbe p{n, c.captured_fraction, c.surging, c.undecided,
                          c.captured == static_cast<int>(grid.size())};
            if (c.surging > 0 || p.all_captured) {
                result.probes.push_back(p);
                return p.all_captured ? 1 : -1;
            }
            if (attempt >= options.horizon_doublings) {
                result.probes.push_back(p);
                std::ostringstream msg;
                msg << "oracle probe at n = " << n << " left " << c.undecided << " of "
                    << grid.size() << " initial states undecided after a horizon of "
                    << capture.horizon << " (captured " << c.captured << ", surging "
                    << c.surging << ")";
                throw OracleError(msg.str());
            }
            capture.horizon *= 2.0;
        }
    };

    // The default lower end sits just past the saddle-node, where no equilibrium exists and
    // passage through the bottleneck takes finite time; at the saddle-node itself it never ends.
    RateRange r = range ? *range
                        : RateRange{rate_for_static_force(ship, wave, resistance, thrust,
                                                          -1.05 * wave.force_amplitude()),
                                    equilibrium_rate_range(ship, wave, resistance, thrust).upper};
    if (!(r.upper > r.lower) || !(r.lower > 0.0)) {
        throw ValidationError("oracle rate range must satisfy 0 < lower < upper");
    }
    int expansions = 0;
    while (probe(r.lower) > 0) {
        r.lower *= 0.5;
        if (++expansions > options.max_expansions) {
            throw OracleError("no escaping initial state found below the oracle range");
        }
    }
    expansions = 0;
    while (probe(r.upper) < 0) {
        r.lower = std::max(r.lower, r.upper);
        r.upper *= 1.25;
        if (++expansions > options.max_expansions) {
            throw OracleError("global capture never reached above the oracle range");
        }
    }

    int iterations = 0;
    while (r.upper - r.lower > options.relative_tolerance * r.upper) {
        if (++iterations > options.max_iterations) throw OracleError("oracle bisection stalled");
        const double mid = 0.5 * (r.lower + r.upper);
        (probe(mid) > 0 ? r.upper : r.lower) = mid;
    }
    result.lower = r.lower;
    result.upper = r.upper;
    result.n_cr = 0.5 * (r.lower + r.upper);
    result.bracket_width = r.upper - r.lower;
    return result;
}

}  // namespace surfride
