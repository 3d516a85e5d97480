#pragma once

// RunReport serialization. JSON carries everything; CSV is the flat table
// suite,p,d,seed,gap,verdict with one row per GapReport.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "wyd/suite.hpp"

namespace wyd {

enum class ReportFormat { json, csv };

nlohmann::json report_to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);
std::string report_to_csv(const RunReport& r);

/// Writes dir/report.json or dir/report.csv, creating dir if needed.
/// Throws InputError when the file cannot be written.
std::filesystem::path emit(const RunReport& r, ReportFormat format, const std::filesystem::path& dir);

RunReport read_report(const std::filesystem::path& path);

}  // namespace wyd
