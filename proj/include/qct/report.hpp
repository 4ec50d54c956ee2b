#pragma once

#include <string>

#include "qct/netsim.hpp"

namespace qct {

inline constexpr const char* kReportSchemaVersion = "1.0";

enum class ReportFormat { Json, Csv, Text };

ReportFormat report_format_from(const std::string& name); // "json" | "csv" | "text"

// Serializes an aggregate into the requested format. Output is a pure
// function of (config, report): floats are rounded to 12 significant digits
// before rendering and field order is fixed, so equal seeds give
// byte-identical documents.
std::string render_report(const ScenarioConfig& config, const AggregateReport& report,
                          ReportFormat format, bool include_per_trial);

} // namespace qct
