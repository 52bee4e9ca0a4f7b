#pragma once

#include <string>

#include <json.hpp>

#include "pidf/types.hpp"

namespace pidf {

inline constexpr int kReportSchemaVersion = 1;

// JSON document for an analysis run. `report` may be in either unit; all
// quantities (ensemble statistics included) are emitted in report.unit.
// Keys keep a fixed insertion order and doubles are written in their
// shortest exact round-trip form, so identical inputs give identical bytes.
nlohmann::ordered_json report_json(const PidfReport& report, const SelectionResult& selection,
                                   const nlohmann::ordered_json& run_config);

std::string render_report(const PidfReport& report, const SelectionResult& selection,
                          const nlohmann::ordered_json& run_config);

}  // namespace pidf
