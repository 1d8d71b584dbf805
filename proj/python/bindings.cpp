/**
 * @file bindings.cpp
 * @brief pybind11 module exposing the config-driven commands and a few primitives.
 *
 * Documents cross the boundary as JSON text; the Python package decodes them.
 */
#include <filesystem>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "surfride/commands.hpp"
#include "surfride/error.hpp"
#include "surfride/hydro.hpp"
#include "surfride/melnikov.hpp"
#include "surfride/report.hpp"

namespace py = pybind11;
using namespace surfride;

namespace {

RunConfig parse_text(const std::string& text, const std::string& base_dir) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc, base_dir.empty() ? std::filesystem::current_path() : std::filesystem::path(base_dir));
}

template <typename Fn>
std::string run_document(const std::string& command, const std::string& text, const std::string& base_dir, Fn fn) {
    const RunConfig config = parse_text(text, base_dir);
    nlohmann::json payload;
    {
        py::gil_scoped_release release;
        payload = fn(config);
    }
    return make_document(command, config_digest(config), payload).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Surf-riding threshold solver";

    auto base = py::register_exception<Error>(m, "SurfrideError");
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    auto solver = py::register_exception<SolverError>(m, "SolverError", base.ptr());
    py::register_exception<NoThresholdError>(m, "NoThresholdError", solver.ptr());
    py::register_exception<OracleError>(m, "OracleError", base.ptr());

    m.attr("__version__") = tool_version();

    m.def("threshold_json", [](const std::string& text, const std::string& base_dir) {
        return run_document("threshold", text, base_dir,
                            [](const RunConfig& c) { return threshold_payload(c, run_threshold(c)); });
    }, py::arg("config"), py::arg("base_dir") = "");
    m.def("oracle_json", [](const std::string& text, const std::string& base_dir) {
        return run_document("oracle", text, base_dir,
                            [](const RunConfig& c) { return oracle_payload(c, run_oracle(c)); });
    }, py::arg("config"), py::arg("base_dir") = "");
    m.def("fk_force_json", [](const std::string& text, const std::string& base_dir) {
        return run_document("fk-force", text, base_dir, [](const RunConfig& c) { return run_fk_force(c); });
    }, py::arg("config"), py::arg("base_dir") = "");
    m.def("validate_json", [](const std::string& text, const std::string& base_dir) {
        return run_document("validate", text, base_dir, [](const RunConfig& c) { return run_validate(c); });
    }, py::arg("config"), py::arg("base_dir") = "");
    m.def("config_digest", [](const std::string& text, const std::string& base_dir) {
        return config_digest(parse_text(text, base_dir));
    }, py::arg("config"), py::arg("base_dir") = "");

    m.def("orbit_moment", &orbit_moment, py::arg("j"), "Integral of cos^j(y/2) over one period.");
    m.def("diffraction_mu", &diffraction_mu, py::arg("block_coefficient"), py::arg("midship_coefficient"));
    m.def("u_positive_steepness_limit", &u_positive_steepness_limit, py::arg("mu") = 1.0);
    m.def("mean_speed_steepness_limit", &mean_speed_steepness_limit, py::arg("mu") = 1.0);
}
