#include "wyd/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wyd/errors.hpp"

namespace wyd {

namespace {

std::string format_double(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

nlohmann::json report_to_json(const RunReport& r) {
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& [suite, s] : r.summary) {
    summary[suite] = {{"pass", s.pass}, {"fail", s.fail}, {"near_zero", s.near_zero},
                      {"degraded", s.degraded}};
  }
  nlohmann::json j{{"config", r.config},
                   {"reports", r.reports},
                   {"summary", summary},
                   {"versions", r.versions},
                   {"exit_code", r.exit_code()}};
  if (!r.timestamp.empty()) j["timestamp"] = r.timestamp;
  return j;
}

RunReport report_from_json(const nlohmann::json& j) {
  RunReport r;
  try {
    r.config = j.at("config");
    r.reports = j.at("reports").get<std::vector<GapReport>>();
    for (const auto& [suite, s] : j.at("summary").items()) {
      r.summary[suite] = {s.at("pass").get<std::size_t>(), s.at("fail").get<std::size_t>(),
                          s.at("near_zero").get<std::size_t>(), s.at("degraded").get<std::size_t>()};
    }
    r.versions = j.at("versions");
    r.timestamp = j.value("timestamp", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
  return r;
}

std::string report_to_csv(const RunReport& r) {
  std::ostringstream out;
  out << "suite,p,d,seed,gap,verdict\n";
  for (const auto& g : r.reports) {
    out << g.suite << ',' << format_double(g.p) << ',' << g.d << ',' << g.seed << ','
        << format_double(g.gap) << ',' << to_string(g.verdict) << '\n';
  }
  return out.str();
}

std::filesystem::path emit(const RunReport& r, ReportFormat format, const std::filesystem::path& dir) {
  std::error_code ec;
  if (!dir.empty()) std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create " + dir.string() + ": " + ec.message());
  const auto path = dir / (format == ReportFormat::json ? "report.json" : "report.csv");
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path.string());
  if (format == ReportFormat::json) {
    f << report_to_json(r).dump(2) << '\n';
  } else {
    f << report_to_csv(r);
  }
  if (!f) throw InputError("write failed for " + path.string());
  return path;
}

RunReport read_report(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read " + path.string());
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return report_from_json(j);
}

}  // namespace wyd
