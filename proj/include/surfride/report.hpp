/**
 * @file report.hpp
 * @brief JSON documents for every result type, and the metadata envelope
 *        that keeps tool/config identity apart from the numeric payload.
 */
#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "surfride/dynamics.hpp"
#include "surfride/hydro.hpp"
#include "surfride/melnikov.hpp"

namespace surfride {

/// Tool version string baked in at build time.
const char* tool_version();

nlohmann::json to_json(const PolynomialCurve& curve);
nlohmann::json to_json(const UniquenessCertificate& certificate);
nlohmann::json to_json(const ValidityAssessment& validity);
nlohmann::json to_json(const ThresholdReport& report);
nlohmann::json to_json(const FroudeKrylovResult& result);
nlohmann::json to_json(const OracleResult& result);

/**
 * {"metadata": {"tool", "version", "config_digest", "command"}, "payload": ...}.
 * Nothing time- or host-dependent goes into either section.
 */
nlohmann::json make_document(const std::string& command, const std::string& config_digest,
                             nlohmann::json payload);

}  // namespace surfride
