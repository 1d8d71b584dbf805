#include "surfride/hydro.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "surfride/error.hpp"

namespace surfride {

namespace {

constexpr double kPi = std::numbers::pi;
// m_x ~ 0.1 m folds into the steepness proxies as the 1.1 divisor.
constexpr double kMassFactor = 1.1;

struct Integrals {
    double sine = 0.0;
    double cosine = 0.0;
    double area = 0.0;
};

Integrals trapezoid(const std::vector<Station>& stations, double k) {
    Integrals out;
    auto sample = [k](const Station& s, double& sn, double& cs) {
        const double decay = std::exp(-k * s.draught / 2.0);
        sn = s.area * std::sin(k * s.x) * decay;
        cs = s.area * std::cos(k * s.x) * decay;
    };
    for (std::size_t i = 1; i < stations.size(); ++i) {
        const auto& a = stations[i - 1];
        const auto& b = stations[i];
        const double h = b.x - a.x;
        double sa, ca, sb, cb;
        sample(a, sa, ca);
        sample(b, sb, cb);
        out.sine += 0.5 * h * (sa + sb);
        out.cosine += 0.5 * h * (ca + cb);
        out.area += 0.5 * h * (a.area + b.area);
    }
    return out;
}

std::vector<Station> midpoint_refined(const std::vector<Station>& stations) {
    std::vector<Station> out;
    out.reserve(2 * stations.size());
    for (std::size_t i = 0; i < stations.size(); ++i) {
        if (i > 0) {
            const auto& a = stations[i - 1];
            const auto& b = stations[i];
            out.push_back({0.5 * (a.x + b.x), 0.5 * (a.area + b.area), 0.5 * (a.draught + b.draught)});
        }
        out.push_back(stations[i]);
    }
    return out;
}

}  // namespace

void HullSectionTable::validate() const {
    if (stations.size() < 2) throw ValidationError("hull table needs at least two stations");
    for (std::size_t i = 0; i < stations.size(); ++i) {
        const auto& s = stations[i];
        if (!std::isfinite(s.x) || !std::isfinite(s.area) || !std::isfinite(s.draught)) {
            throw ValidationError("hull station " + std::to_string(i) + " is not finite");
        }
        if (s.area < 0.0) throw ValidationError("hull station " + std::to_string(i) + " has S < 0");
        if (s.draught < 0.0) {
            throw ValidationError("hull station " + std::to_string(i) + " has d < 0");
        }
        if (i > 0 && !(s.x > stations[i - 1].x)) {
            throw ValidationError("hull stations must be strictly increasing in x (row " +
                                  std::to_string(i) + ")");
        }
    }
}

double HullSectionTable::displaced_mass(double water_density) const {
    return water_density * trapezoid(stations, 0.0).area;
}

HullSectionTable read_station_table(std::istream& in) {
    HullSectionTable hull;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            const auto pos = line.find("units:");
            if (pos != std::string::npos) {
                std::istringstream units(line.substr(pos + 6));
                std::string ux, us, ud;
                units >> ux >> us >> ud;
                if (ux != "m" || (us != "m^2" && us != "m2") || ud != "m") {
                    throw ValidationError("station table line " + std::to_string(line_no) +
                                          ": expected units 'm m^2 m'");
                }
            }
            continue;
        }
        std::istringstream row(line);
        Station s;
        if (!(row >> s.x >> s.area >> s.draught)) {
            // A leading textual header row is tolerated.
            if (hull.stations.empty() && !std::isdigit(static_cast<unsigned char>(line[first])) &&
                line[first] != '-' && line[first] != '+' && line[first] != '.') {
                continue;
            }
            throw ValidationError("station table line " + std::to_string(line_no) +
                                  ": expected three numbers 'x S d'");
        }
        hull.stations.push_back(s);
    }
    return hull;
}

HullSectionTable read_station_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open station table '" + path + "'");
    return read_station_table(in);
}

double diffraction_mu(double cb, double cm) {
    if (!(cb > 0.0 && cb <= 1.0)) throw ValidationError("block coefficient must lie in (0, 1]");
    if (!(cm > 0.0 && cm <= 1.0)) throw ValidationError("midship coefficient must lie in (0, 1]");
    if (cm < 0.86) return 1.46 * cb - 0.05;
    if (cm <= 0.94) return (5.76 - 5.00 * cm) * cb - 0.05;
    return 1.06 * cb - 0.05;
}

double resolve_mu(const MuSpec& spec, const HullSectionTable& hull) {
    switch (spec.mode) {
        case MuMode::Unity:
            return 1.0;
        case MuMode::SgiscFormula:
            return diffraction_mu(hull.block_coefficient, hull.midship_coefficient);
        case MuMode::Explicit:
            if (!(spec.value > 0.0) || !std::isfinite(spec.value)) {
                throw ValidationError("explicit mu must be positive");
            }
            return spec.value;
    }
    throw ValidationError("unknown mu mode");
}

FroudeKrylovResult froude_krylov_amplitude(const HullSectionTable& hull, const WaveCase& wave,
                                           const MuSpec& mu_spec,
                                           const FroudeKrylovOptions& options) {
    if (hull.stations.empty()) throw ValidationError("hull station list is empty");
    hull.validate();
    const double k = wave.wave_number();
    const double rho = options.water_density;
    const double g = wave.gravity();

    FroudeKrylovResult out;
    out.mu = resolve_mu(mu_spec, hull);
    const auto integrals = trapezoid(hull.stations, k);
    out.sine_integral = integrals.sine;
    out.cosine_integral = integrals.cosine;
    out.displaced_mass = rho * integrals.area;

    const double scale = out.mu * kPi * rho * g * wave.steepness();
    out.amplitude = scale * std::hypot(integrals.sine, integrals.cosine);
    out.amplitude_upper_bound = scale * integrals.area;

    if (options.ship_mass) {
        out.mass_ratio = out.displaced_mass / *options.ship_mass;
        out.mass_consistent = std::abs(*out.mass_ratio - 1.0) <= options.mass_tolerance;
        if (!out.mass_consistent) {
            std::ostringstream msg;
            msg << "rho * int S dx = " << out.displaced_mass << " kg differs from ship mass "
                << *options.ship_mass << " kg by more than " << 100.0 * options.mass_tolerance
                << "%";
            out.warnings.push_back(msg.str());
        }
    }
    if (options.refinement_check) {
        const auto fine = trapezoid(midpoint_refined(hull.stations), k);
        const double coarse_mag = std::hypot(integrals.sine, integrals.cosine);
        const double fine_mag = std::hypot(fine.sine, fine.cosine);
        out.refinement_change =
            fine_mag > 0.0 ? std::abs(fine_mag - coarse_mag) / fine_mag : 0.0;
    }
    return out;
}

double u_positive_steepness_limit(double mu) { return 1.0 / (mu * 4.0 * kPi / kMassFactor); }

double mean_speed_steepness_limit(double mu) {
    return 1.0 / (mu * 16.0 / (kMassFactor * kPi));
}

ValidityAssessment assess_validity(const ShipPropulsion& ship, const WaveCase& wave, double mu) {
    ValidityAssessment v;
    v.steepness = wave.steepness();
    v.mu = mu;
    v.force_amplitude = wave.force_amplitude();
    v.total_mass = ship.total_mass();
    const double weight = v.total_mass * wave.gravity();
    v.u_positive_limit = 0.25 * weight;
    v.mean_speed_limit = kPi * kPi / 16.0 * weight;
    v.u_positive_bound = v.force_amplitude < v.u_positive_limit;
    v.mean_speed_bound = v.force_amplitude < v.mean_speed_limit;
    v.u_positive_proxy = mu * 4.0 * kPi / kMassFactor * v.steepness;
    v.mean_speed_proxy = mu * 16.0 / (kMassFactor * kPi) * v.steepness;
    v.u_positive_steepness_limit = u_positive_steepness_limit(mu);
    v.mean_speed_steepness_limit = mean_speed_steepness_limit(mu);
    v.u_positive_proxy_ok = v.u_positive_proxy < 1.0;
    v.mean_speed_proxy_ok = v.mean_speed_proxy < 1.0;
    v.rtcond_proxy = v.mean_speed_proxy_ok;
    return v;
}

}  // namespace surfride
