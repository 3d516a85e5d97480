#include "wyd/gap_report.hpp"

#include <cmath>

#include "wyd/errors.hpp"

namespace wyd {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::degraded: return "degraded";
  }
  return "unknown";
}

Verdict verdict_from_string(std::string_view s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "degraded") return Verdict::degraded;
  throw InputError("unknown verdict '" + std::string(s) + "'");
}

void apply_tolerance(GapReport& r, Tolerance tol) {
  if (!std::isfinite(r.gap)) {
    r.verdict = Verdict::degraded;
    r.near_zero = false;
    return;
  }
  const double slack = tol.atol + tol.rtol * (std::abs(r.lhs) + std::abs(r.rhs));
  r.verdict = r.gap >= -slack ? Verdict::pass : Verdict::fail;
  r.near_zero = r.verdict == Verdict::pass && r.gap < 0.0;
}

GapReport make_gap(std::string name, double lhs, double rhs, double p, Tolerance tol) {
  GapReport r;
  r.name = std::move(name);
  r.p = p;
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = rhs - lhs;
  apply_tolerance(r, tol);
  return r;
}

GapReport make_deviation(std::string name, double deviation, double threshold, double p) {
  return make_gap(std::move(name), deviation, threshold, p, Tolerance{0.0, 0.0});
}

GapReport make_degraded(std::string name, std::string message, double p) {
  GapReport r;
  r.name = std::move(name);
  r.p = p;
  r.gap = std::numeric_limits<double>::quiet_NaN();
  r.verdict = Verdict::degraded;
  r.note = std::move(message);
  return r;
}

namespace {

nlohmann::json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

double number_or_nan(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

void to_json(nlohmann::json& j, const GapReport& r) {
  j = nlohmann::json{{"name", r.name},
                     {"suite", r.suite},
                     {"p", number_or_null(r.p)},
                     {"d", r.d},
                     {"seed", r.seed},
                     {"lhs", number_or_null(r.lhs)},
                     {"rhs", number_or_null(r.rhs)},
                     {"gap", number_or_null(r.gap)},
                     {"verdict", std::string(to_string(r.verdict))},
                     {"near_zero", r.near_zero},
                     {"params", r.params},
                     {"note", r.note}};
}

void from_json(const nlohmann::json& j, GapReport& r) {
  r.name = j.at("name").get<std::string>();
  r.suite = j.at("suite").get<std::string>();
  r.p = number_or_nan(j.at("p"));
  r.d = j.at("d").get<std::int64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.lhs = number_or_nan(j.at("lhs"));
  r.rhs = number_or_nan(j.at("rhs"));
  r.gap = number_or_nan(j.at("gap"));
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.near_zero = j.at("near_zero").get<bool>();
  r.params = j.at("params");
  r.note = j.at("note").get<std::string>();
}

}  // namespace wyd
