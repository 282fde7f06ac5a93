/**
 * @brief Machine-readable reports: one JSON object per line, every number as
 * a decimal string so two runs can be compared byte for byte.
 *
 * Schema: {command, inputs, outputs, residual?, tolerance?, passed?, bits, version}.
 */
#pragma once

#include "ellgreen/check_report.hpp"
#include "ellgreen/version.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ellgreen {

using Json = nlohmann::ordered_json;

/// Digits used for residuals and tolerances in reports.
inline constexpr int kReportDigits = 20;

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    Json outputs = Json::object();
    std::optional<std::string> residual;
    std::optional<std::string> tolerance;
    std::optional<bool> passed;
    int bits = 0;
};

inline Json to_json(const Report& r) {
    Json j;
    j["command"] = r.command;
    Json in = Json::object();
    for (const auto& [k, v] : r.inputs) in[k] = v;
    j["inputs"] = in;
    j["outputs"] = r.outputs;
    if (r.residual) j["residual"] = *r.residual;
    if (r.tolerance) j["tolerance"] = *r.tolerance;
    if (r.passed) j["passed"] = *r.passed;
    j["bits"] = std::to_string(r.bits);
    j["version"] = kVersion;
    return j;
}

inline Report to_report(const CheckReport& c, const std::string& command) {
    Report r;
    r.command = command;
    r.inputs = c.inputs;
    r.inputs.insert(r.inputs.begin(), {"check", c.name});
    for (const auto& [k, v] : c.outputs) r.outputs[k] = v;
    r.residual = c.residual.to_string(kReportDigits);
    r.tolerance = c.tolerance.to_string(kReportDigits);
    r.passed = c.passed;
    r.bits = c.bits;
    return r;
}

/// One compact JSON object per line.
inline void write_ndjson(std::ostream& os, const Report& r) { os << to_json(r).dump() << '\n'; }

}  // namespace ellgreen
