#include "surfride/report.hpp"

#ifndef SURFRIDE_VERSION
#define SURFRIDE_VERSION "0.0.0"
#endif

namespace surfride {

using nlohmann::json;

namespace {

template <typename T>
json optional_json(const std::optional<T>& value) {
    return value ? json(*value) : json(nullptr);
}

}  // namespace

const char* tool_version() { return SURFRIDE_VERSION; }

json to_json(const PolynomialCurve& curve) {
    return {{"degree", curve.degree()},
            {"coefficients", std::vector<double>(curve.coefficients().begin(), curve.coefficients().end())},
            {"residual_rms", curve.residual_rms()},
            {"degenerate", curve.degenerate()}};
}

json to_json(const UniquenessCertificate& c) {
    return {{"expected_resistance", c.expected_resistance},
            {"tau2_mean_square_speed", optional_json(c.tau2_mean_square_speed)},
            {"rtcond", optional_json(c.rtcond)},
            {"resistance_integral_positive", c.resistance_integral_positive},
            {"min_orbit_speed", c.min_orbit_speed},
            {"mean_speed", c.mean_speed},
            {"u_positive_limit", c.u_positive_limit},
            {"u_positive_bound", c.u_positive_bound},
            {"mean_speed_limit", c.mean_speed_limit},
            {"mean_speed_bound", c.mean_speed_bound}};
}

json to_json(const ValidityAssessment& v) {
    return {{"steepness", v.steepness},
            {"mu", v.mu},
            {"force_amplitude", v.force_amplitude},
            {"total_mass", v.total_mass},
            {"u_positive_limit", v.u_positive_limit},
            {"u_positive_bound", v.u_positive_bound},
            {"mean_speed_limit", v.mean_speed_limit},
            {"mean_speed_bound", v.mean_speed_bound},
            {"u_positive_proxy", v.u_positive_proxy},
            {"u_positive_steepness_limit", v.u_positive_steepness_limit},
            {"u_positive_proxy_ok", v.u_positive_proxy_ok},
            {"mean_speed_proxy", v.mean_speed_proxy},
            {"mean_speed_steepness_limit", v.mean_speed_steepness_limit},
            {"mean_speed_proxy_ok", v.mean_speed_proxy_ok},
            {"rtcond_proxy", v.rtcond_proxy}};
}

json to_json(const ThresholdReport& r) {
    json out = {{"method", to_string(r.method)},
                {"n_cr", optional_json(r.n_cr_positive)},
                {"rtcond_satisfied", r.rtcond_satisfied},
                {"residual", r.residual},
                {"residual_tolerance", r.residual_tolerance},
                {"discriminant", optional_json(r.discriminant)},
                {"tau", {r.tau0, r.tau1, r.tau2}},
                {"celerity", r.celerity},
                {"wave_number", r.wave_number},
                {"force_amplitude", r.force_amplitude},
                {"orbit_speed_scale", r.orbit_speed_scale},
                {"mean_speed", r.mean_speed},
                {"mean_square_speed", r.mean_square_speed},
                {"expected_resistance", r.expected_resistance},
                {"branch_start", r.branch_start},
                {"iterations", r.iterations},
                {"certificate", to_json(r.certificate)},
                {"notes", r.notes}};
    out["roots"] = {{"positive", optional_json(r.n_cr_positive)},
                    {"negative", {{"value", optional_json(r.n_cr_negative)}, {"physical", false}}}};
    out["bracket"] = r.bracket ? json{r.bracket->lower, r.bracket->upper} : json(nullptr);
    out["validity"] = r.validity ? to_json(*r.validity) : json(nullptr);
    return out;
}

json to_json(const FroudeKrylovResult& r) {
    return {{"sine_integral", r.sine_integral},
            {"cosine_integral", r.cosine_integral},
            {"mu", r.mu},
            {"force_amplitude", r.amplitude},
            {"displaced_mass", r.displaced_mass},
            {"mass_ratio", optional_json(r.mass_ratio)},
            {"mass_consistent", r.mass_consistent},
            {"amplitude_upper_bound", r.amplitude_upper_bound},
            {"refinement_change", optional_json(r.refinement_change)},
            {"warnings", r.warnings}};
}

json to_json(const OracleResult& r) {
    json probes = json::array();
    for (const auto& p : r.probes) {
        probes.push_back({{"rate", p.rate},
                          {"captured_fraction", p.captured_fraction},
                          {"surging", p.surging},
                          {"undecided", p.undecided},
                          {"all_captured", p.all_captured}});
    }
    return {{"n_cr", r.n_cr},
            {"lower", r.lower},
            {"upper", r.upper},
            {"bracket_width", r.bracket_width},
            {"grid_size", r.grid_size},
            {"total_steps", r.total_steps},
            {"probes", probes}};
}

json make_document(const std::string& command, const std::string& config_digest, json payload) {
    return {{"metadata",
             {{"tool", "surfride"},
              {"version", tool_version()},
              {"command", command},
              {"config_digest", config_digest}}},
            {"payload", std::move(payload)}};
}

}  // namespace surfride
