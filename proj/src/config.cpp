#include "surfride/config.hpp"

#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "surfride/error.hpp"

namespace surfride {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

enum class Dimension { Mass, Length, Density, Force, Speed, Acceleration, Rate, Dimensionless };

double unit_scale(Dimension dim, const std::string& unit, const std::string& where) {
    static const std::map<Dimension, std::map<std::string, double>> table = {
        {Dimension::Mass, {{"kg", 1.0}, {"t", 1000.0}}},
        {Dimension::Length, {{"m", 1.0}, {"ft", 0.3048}}},
        {Dimension::Density, {{"kg/m^3", 1.0}, {"t/m^3", 1000.0}}},
        {Dimension::Force, {{"N", 1.0}, {"kN", 1e3}, {"MN", 1e6}}},
        {Dimension::Speed, {{"m/s", 1.0}, {"kn", 1852.0 / 3600.0}}},
        {Dimension::Acceleration, {{"m/s^2", 1.0}}},
        {Dimension::Rate, {{"1/s", 1.0}, {"rps", 1.0}, {"rpm", 1.0 / 60.0}}},
        {Dimension::Dimensionless, {{"-", 1.0}, {"", 1.0}}},
    };
    const auto& units = table.at(dim);
    const auto it = units.find(unit);
    if (it == units.end()) throw ValidationError(where + ": unsupported unit '" + unit + "'");
    return it->second;
}

const json& require_field(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ValidationError(where + "." + key + ": missing");
    }
    return obj.at(key);
}

double as_number(const json& value, const std::string& where) {
    if (!value.is_number()) throw ValidationError(where + ": expected a number");
    return value.get<double>();
}

// A bare number (already SI) or {"value": x, "unit": "..."}.
double quantity(const json& value, Dimension dim, const std::string& where) {
    if (value.is_number()) return value.get<double>();
    if (value.is_object() && value.contains("value")) {
        const double v = as_number(value.at("value"), where + ".value");
        const std::string unit = value.value("unit", "");
        return v * unit_scale(dim, unit, where + ".unit");
    }
    throw ValidationError(where + ": expected a number or {\"value\", \"unit\"}");
}

double optional_quantity(const json& obj, const std::string& key, Dimension dim, double fallback,
                         const std::string& where) {
    if (!obj.contains(key)) return fallback;
    return quantity(obj.at(key), dim, where + "." + key);
}

std::vector<double> number_list(const json& value, const std::string& where) {
    if (!value.is_array() || value.empty()) throw ValidationError(where + ": expected a non-empty array");
    std::vector<double> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        out.push_back(as_number(value[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<Sample> sample_list(const json& value, const std::string& where) {
    if (!value.is_array() || value.empty()) throw ValidationError(where + ": expected a non-empty array");
    std::vector<Sample> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        const auto row = number_list(value[i], where + "[" + std::to_string(i) + "]");
        if (row.size() != 2) throw ValidationError(where + "[" + std::to_string(i) + "]: expected [x, y]");
        out.push_back({row[0], row[1]});
    }
    return out;
}

std::string resolve_file(const json& value, const fs::path& base, const std::string& where) {
    if (!value.is_string()) throw ValidationError(where + ": expected a path string");
    fs::path p(value.get<std::string>());
    if (p.is_relative()) p = base / p;
    if (!fs::exists(p)) throw ValidationError(where + ": file '" + p.string() + "' does not exist");
    return p.string();
}

// Resistance: abscissa speed, ordinate force. Propeller: both dimensionless.
CurveInput parse_curve(const json& block, const std::string& where, const std::string& coeff_key,
                       bool dimensional, const fs::path& base) {
    if (!block.is_object()) throw ValidationError(where + ": expected an object");
    double x_scale = 1.0;
    double y_scale = 1.0;
    if (dimensional) {
        x_scale = unit_scale(Dimension::Speed, block.value("speed_unit", "m/s"), where + ".speed_unit");
        y_scale = unit_scale(Dimension::Force, block.value("force_unit", "N"), where + ".force_unit");
    }
    const int sources = static_cast<int>(block.contains(coeff_key)) +
                        static_cast<int>(block.contains("samples")) +
                        static_cast<int>(block.contains("samples_file"));
    if (sources != 1) {
        throw ValidationError(where + ": give exactly one of '" + coeff_key +
                              "', 'samples', 'samples_file'");
    }
    CurveInput c;
    c.degenerate = block.value("degenerate", false);
    if (block.contains(coeff_key)) {
        c.source = CurveSource::Coefficients;
        c.coefficients = number_list(block.at(coeff_key), where + "." + coeff_key);
        for (std::size_t i = 0; i < c.coefficients.size(); ++i) {
            c.coefficients[i] *= y_scale / integer_power(x_scale, static_cast<int>(i));
        }
        c.degree = static_cast<int>(c.coefficients.size()) - 1;
        try {
            PolynomialCurve check(c.coefficients, 0.0, c.degenerate);
        } catch (const ValidationError& e) {
            throw ValidationError(where + "." + coeff_key + ": " + e.what());
        }
        return c;
    }
    c.source = CurveSource::Samples;
    if (block.contains("samples")) {
        c.samples = sample_list(block.at("samples"), where + ".samples");
    } else {
        c.samples = read_sample_table_file(resolve_file(block.at("samples_file"), base, where + ".samples_file"));
    }
    for (auto& s : c.samples) {
        s.x *= x_scale;
        s.y *= y_scale;
    }
    const auto& degree = require_field(block, "degree", where);
    if (!degree.is_number_integer() || degree.get<int>() < 0) {
        throw ValidationError(where + ".degree: expected a non-negative integer");
    }
    c.degree = degree.get<int>();
    return c;
}

json curve_json(const CurveInput& c, const std::string& coeff_key) {
    json out;
    if (c.source == CurveSource::Coefficients) {
        out[coeff_key] = c.coefficients;
    } else {
        json rows = json::array();
        for (const auto& s : c.samples) rows.push_back({s.x, s.y});
        out["samples"] = rows;
        out["degree"] = c.degree;
    }
    if (c.degenerate) out["degenerate"] = true;
    return out;
}

HullSectionTable parse_hull_table(const json& block, const fs::path& base) {
    const std::string where = "hull";
    HullSectionTable table;
    const int sources = static_cast<int>(block.contains("stations")) +
                        static_cast<int>(block.contains("stations_file"));
    if (sources != 1) throw ValidationError("hull: give exactly one of 'stations', 'stations_file'");
    if (block.contains("stations")) {
        const auto& rows = block.at("stations");
        if (!rows.is_array()) throw ValidationError("hull.stations: expected an array");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto row = number_list(rows[i], "hull.stations[" + std::to_string(i) + "]");
            if (row.size() != 3) {
                throw ValidationError("hull.stations[" + std::to_string(i) + "]: expected [x, S, d]");
            }
            table.stations.push_back({row[0], row[1], row[2]});
        }
    } else {
        table = read_station_table_file(resolve_file(block.at("stations_file"), base, "hull.stations_file"));
    }
    table.block_coefficient = block.contains("block_coefficient")
                                  ? as_number(block.at("block_coefficient"), where + ".block_coefficient")
                                  : 0.0;
    table.midship_coefficient =
        block.contains("midship_coefficient")
            ? as_number(block.at("midship_coefficient"), where + ".midship_coefficient")
            : 0.0;
    try {
        table.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("hull: ") + e.what());
    }
    return table;
}

}  // namespace

const char* to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::Steepness:
            return "steepness";
        case SweepParameter::Wavelength:
            return "wavelength";
        case SweepParameter::Rate:
            return "rate";
    }
    return "unknown";
}

SweepParameter parse_sweep_parameter(const std::string& name) {
    if (name == "steepness" || name == "H/lambda") return SweepParameter::Steepness;
    if (name == "wavelength" || name == "lambda") return SweepParameter::Wavelength;
    if (name == "rate" || name == "n") return SweepParameter::Rate;
    throw ValidationError("sweep.parameter: expected steepness, wavelength or rate, got '" + name + "'");
}

std::vector<Sample> read_sample_table(std::istream& in) {
    std::vector<Sample> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        Sample s;
        if (!(row >> s.x >> s.y)) {
            if (out.empty() && std::isalpha(static_cast<unsigned char>(line[first]))) continue;
            throw ValidationError("sample table line " + std::to_string(line_no) +
                                  ": expected two numbers 'x y'");
        }
        out.push_back(s);
    }
    if (out.empty()) throw ValidationError("sample table is empty");
    return out;
}

std::vector<Sample> read_sample_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open sample table '" + path + "'");
    try {
        return read_sample_table(in);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

RunConfig parse_config(const json& doc, const fs::path& base) {
    if (!doc.is_object()) throw ValidationError("config: expected a JSON object");
    RunConfig c;

    const auto& ship = require_field(doc, "ship", "config");
    c.ship.mass = quantity(require_field(ship, "mass", "ship"), Dimension::Mass, "ship.mass");
    const auto& added = require_field(ship, "added_mass", "ship");
    if (added.is_string()) {
        if (added.get<std::string>() != "auto") {
            throw ValidationError("ship.added_mass: expected a quantity or \"auto\"");
        }
        c.ship.added_mass = estimated_added_mass(c.ship.mass);
        c.ship.added_mass_estimated = true;
    } else {
        c.ship.added_mass = quantity(added, Dimension::Mass, "ship.added_mass");
    }
    c.ship.wake_fraction = as_number(require_field(ship, "wake_fraction", "ship"), "ship.wake_fraction");
    c.ship.thrust_deduction =
        as_number(require_field(ship, "thrust_deduction", "ship"), "ship.thrust_deduction");
    c.ship.prop_diameter =
        quantity(require_field(ship, "prop_diameter", "ship"), Dimension::Length, "ship.prop_diameter");
    c.ship.water_density =
        optional_quantity(ship, "water_density", Dimension::Density, kSeaWaterDensity, "ship");
    c.ship.validate();

    c.resistance = parse_curve(require_field(doc, "resistance", "config"), "resistance",
                               "coefficients", true, base);
    c.propeller = parse_curve(require_field(doc, "propeller", "config"), "propeller", "kappa", false, base);

    if (doc.contains("hull")) {
        HullInput hull;
        hull.table = parse_hull_table(doc.at("hull"), base);
        hull.mass_tolerance = doc.at("hull").value("mass_tolerance", 0.02);
        c.hull = hull;
    }

    const auto& wave = require_field(doc, "wave", "config");
    c.wave.wavelength =
        quantity(require_field(wave, "wavelength", "wave"), Dimension::Length, "wave.wavelength");
    if (!(c.wave.wavelength > 0.0)) throw ValidationError("wave.wavelength: must be > 0");
    c.wave.gravity = optional_quantity(wave, "gravity", Dimension::Acceleration, kStandardGravity, "wave");
    if (!(c.wave.gravity > 0.0)) throw ValidationError("wave.gravity: must be > 0");
    const bool has_height = wave.contains("height");
    const bool has_steepness = wave.contains("steepness");
    if (has_height == has_steepness) {
        throw ValidationError("wave: give exactly one of 'height' and 'steepness'");
    }
    c.wave.height = has_height ? quantity(wave.at("height"), Dimension::Length, "wave.height")
                               : as_number(wave.at("steepness"), "wave.steepness") * c.wave.wavelength;
    if (!(c.wave.height >= 0.0)) throw ValidationError("wave.height: must be >= 0");

    const auto& force = require_field(wave, "force_amplitude", "wave");
    if (force.is_string()) {
        if (force.get<std::string>() != "compute") {
            throw ValidationError("wave.force_amplitude: expected a quantity or \"compute\"");
        }
        if (!c.hull) throw ValidationError("wave.force_amplitude: \"compute\" needs a hull block");
        c.wave.force_source = ForceSource::Compute;
    } else {
        c.wave.force_source = ForceSource::Explicit;
        c.wave.force_amplitude = quantity(force, Dimension::Force, "wave.force_amplitude");
        if (!(c.wave.force_amplitude >= 0.0)) throw ValidationError("wave.force_amplitude: must be >= 0");
    }
    if (wave.contains("mu")) {
        const auto& mu = wave.at("mu");
        if (mu.is_string()) {
            if (mu.get<std::string>() != "sgisc") {
                throw ValidationError("wave.mu: expected a number or \"sgisc\"");
            }
            if (!c.hull) throw ValidationError("wave.mu: \"sgisc\" needs hull block/midship coefficients");
            c.wave.mu = MuSpec::sgisc_formula();
        } else {
            const double value = as_number(mu, "wave.mu");
            if (!(value > 0.0)) throw ValidationError("wave.mu: must be > 0");
            c.wave.mu = value == 1.0 ? MuSpec::unity() : MuSpec::explicit_value(value);
        }
    }

    if (doc.contains("solver")) {
        const auto& s = doc.at("solver");
        c.solver.relative_tolerance = s.value("relative_tolerance", c.solver.relative_tolerance);
        c.solver.max_rate = s.value("max_rate", c.solver.max_rate);
        c.solver.residual_tolerance = s.value("residual_tolerance", c.solver.residual_tolerance);
        c.solver.monotonicity_samples = s.value("monotonicity_samples", c.solver.monotonicity_samples);
    }
    if (doc.contains("oracle")) {
        const auto& o = doc.at("oracle");
        auto& cap = c.oracle.capture;
        if (o.contains("grid")) {
            const auto& g = o.at("grid");
            c.oracle.grid.positions = g.value("positions", c.oracle.grid.positions);
            c.oracle.grid.speeds = g.value("speeds", c.oracle.grid.speeds);
            c.oracle.grid.speed_min = g.value("speed_min", c.oracle.grid.speed_min);
            c.oracle.grid.speed_max = g.value("speed_max", c.oracle.grid.speed_max);
        }
        cap.horizon = o.value("horizon", cap.horizon);
        cap.step = o.value("step", cap.step);
        cap.speed_tolerance = o.value("speed_tolerance", cap.speed_tolerance);
        cap.position_tolerance = o.value("position_tolerance", cap.position_tolerance);
        cap.dwell = o.value("dwell", cap.dwell);
        cap.surging_cycles = o.value("surging_cycles", cap.surging_cycles);
        cap.cycle_convergence = o.value("cycle_convergence", cap.cycle_convergence);
        cap.energy_trap = o.value("energy_trap", cap.energy_trap);
        c.oracle.relative_tolerance = o.value("relative_tolerance", c.oracle.relative_tolerance);
        if (o.contains("range")) {
            const auto r = number_list(o.at("range"), "oracle.range");
            if (r.size() != 2 || !(r[0] > 0.0 && r[1] > r[0])) {
                throw ValidationError("oracle.range: expected [lower, upper] with 0 < lower < upper");
            }
            c.oracle_range = RateRange{r[0], r[1]};
        }
        if (!(cap.horizon > 0.0) || !(cap.step > 0.0) || !(cap.dwell >= 0.0)) {
            throw ValidationError("oracle: horizon, step must be > 0 and dwell >= 0");
        }
    }
    if (doc.contains("sweep")) {
        const auto& s = doc.at("sweep");
        SweepSpec spec;
        spec.parameter = parse_sweep_parameter(require_field(s, "parameter", "sweep").get<std::string>());
        spec.from = as_number(require_field(s, "from", "sweep"), "sweep.from");
        spec.to = as_number(require_field(s, "to", "sweep"), "sweep.to");
        spec.count = require_field(s, "count", "sweep").get<int>();
        c.sweep = spec;
    }
    if (doc.contains("output")) {
        const auto& o = doc.at("output");
        c.output.report = o.value("report", "");
        c.output.table = o.value("table", "");
        c.output.trajectory = o.value("trajectory", "");
    }
    return c;
}

fs::path resolve_config_path(const std::string& name) {
    fs::path direct(name);
    if (fs::exists(direct)) return direct;
    if (direct.is_relative()) {
        if (const char* env = std::getenv(kConfigPathVariable)) {
            std::stringstream dirs(env);
            std::string dir;
            while (std::getline(dirs, dir, ':')) {
                if (dir.empty()) continue;
                const fs::path candidate = fs::path(dir) / direct;
                if (fs::exists(candidate)) return candidate;
            }
        }
    }
    throw ValidationError("config '" + name + "' not found (searched the working directory and " +
                          kConfigPathVariable + ")");
}

RunConfig load_config(const std::string& name) {
    const fs::path path = resolve_config_path(name);
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc, path.parent_path().empty() ? fs::current_path() : path.parent_path());
}

json serialize_config(const RunConfig& c) {
    json doc;
    doc["ship"] = {{"mass", c.ship.mass},
                   {"wake_fraction", c.ship.wake_fraction},
                   {"thrust_deduction", c.ship.thrust_deduction},
                   {"prop_diameter", c.ship.prop_diameter},
                   {"water_density", c.ship.water_density}};
    doc["ship"]["added_mass"] = c.ship.added_mass_estimated ? json("auto") : json(c.ship.added_mass);
    doc["resistance"] = curve_json(c.resistance, "coefficients");
    doc["propeller"] = curve_json(c.propeller, "kappa");
    json wave = {{"wavelength", c.wave.wavelength}, {"height", c.wave.height}, {"gravity", c.wave.gravity}};
    wave["force_amplitude"] =
        c.wave.force_source == ForceSource::Compute ? json("compute") : json(c.wave.force_amplitude);
    switch (c.wave.mu.mode) {
        case MuMode::Unity:
            wave["mu"] = 1.0;
            break;
        case MuMode::SgiscFormula:
            wave["mu"] = "sgisc";
            break;
        case MuMode::Explicit:
            wave["mu"] = c.wave.mu.value;
            break;
    }
    doc["wave"] = wave;
    if (c.hull) {
        json rows = json::array();
        for (const auto& s : c.hull->table.stations) rows.push_back({s.x, s.area, s.draught});
        doc["hull"] = {{"stations", rows},
                       {"block_coefficient", c.hull->table.block_coefficient},
                       {"midship_coefficient", c.hull->table.midship_coefficient},
                       {"mass_tolerance", c.hull->mass_tolerance}};
    }
    doc["solver"] = {{"relative_tolerance", c.solver.relative_tolerance},
                     {"max_rate", c.solver.max_rate},
                     {"residual_tolerance", c.solver.residual_tolerance},
                     {"monotonicity_samples", c.solver.monotonicity_samples}};
    const auto& cap = c.oracle.capture;
    json oracle = {{"grid",
                    {{"positions", c.oracle.grid.positions},
                     {"speeds", c.oracle.grid.speeds},
                     {"speed_min", c.oracle.grid.speed_min},
                     {"speed_max", c.oracle.grid.speed_max}}},
                   {"horizon", cap.horizon},
                   {"step", cap.step},
                   {"speed_tolerance", cap.speed_tolerance},
                   {"position_tolerance", cap.position_tolerance},
                   {"dwell", cap.dwell},
                   {"surging_cycles", cap.surging_cycles},
                   {"cycle_convergence", cap.cycle_convergence},
                   {"energy_trap", cap.energy_trap},
                   {"relative_tolerance", c.oracle.relative_tolerance}};
    if (c.oracle_range) oracle["range"] = {c.oracle_range->lower, c.oracle_range->upper};
    doc["oracle"] = oracle;
    if (c.sweep) {
        doc["sweep"] = {{"parameter", to_string(c.sweep->parameter)},
                        {"from", c.sweep->from},
                        {"to", c.sweep->to},
                        {"count", c.sweep->count}};
    }
    json output = json::object();
    if (!c.output.report.empty()) output["report"] = c.output.report;
    if (!c.output.table.empty()) output["table"] = c.output.table;
    if (!c.output.trajectory.empty()) output["trajectory"] = c.output.trajectory;
    if (!output.empty()) doc["output"] = output;
    return doc;
}

std::string config_digest(const RunConfig& config) { return sha256_digest(serialize_config(config).dump()); }

std::string sha256_digest(const std::string& text) {
    unsigned char hash[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(text.data(), text.size(), hash, &length, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 digest failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(hash[i]);
    }
    return "sha256:" + hex.str();
}

PolynomialCurve resolve_resistance(const RunConfig& config) {
    const auto& c = config.resistance;
    if (c.source == CurveSource::Coefficients) return PolynomialCurve(c.coefficients, 0.0, c.degenerate);
    try {
        return fit_polynomial(c.samples, c.degree);
    } catch (const FitError& e) {
        throw ValidationError(std::string("resistance: ") + e.what());
    }
}

ThrustModel resolve_thrust(const RunConfig& config) {
    const auto& c = config.propeller;
    if (c.source == CurveSource::Coefficients) return ThrustModel(c.coefficients);
    try {
        return ThrustModel::from_curve(fit_polynomial(c.samples, c.degree));
    } catch (const FitError& e) {
        throw ValidationError(std::string("propeller: ") + e.what());
    }
}

ResolvedWave resolve_wave(const RunConfig& config, const WaveInput& input) {
    ResolvedWave out;
    if (input.force_source == ForceSource::Explicit) {
        out.wave = WaveCase(input.wavelength, input.height, input.force_amplitude, input.gravity);
        out.mu = config.hull ? resolve_mu(input.mu, config.hull->table)
                             : (input.mu.mode == MuMode::Explicit ? input.mu.value : 1.0);
        return out;
    }
    if (!config.hull) throw ValidationError("wave.force_amplitude: \"compute\" needs a hull block");
    const WaveCase unforced(input.wavelength, input.height, 0.0, input.gravity);
    FroudeKrylovOptions options;
    options.water_density = config.ship.water_density;
    options.ship_mass = config.ship.mass;
    options.mass_tolerance = config.hull->mass_tolerance;
    options.refinement_check = true;
    auto fk = froude_krylov_amplitude(config.hull->table, unforced, input.mu, options);
    out.wave = unforced.with_force_amplitude(fk.amplitude);
    out.mu = fk.mu;
    out.froude_krylov = std::move(fk);
    return out;
}

}  // namespace surfride
