#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace wyd {

struct Tolerance {
  double atol = 1e-9;
  double rtol = 1e-9;
};

enum class Verdict { pass, fail, degraded };

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

/// One signed-gap check. gap = rhs - lhs is oriented so that gap >= 0 means
/// the inequality holds; pass iff gap >= -(atol + rtol (|lhs| + |rhs|)).
struct GapReport {
  std::string name;
  std::string suite;
  double p = std::numeric_limits<double>::quiet_NaN();
  std::int64_t d = 0;
  std::uint64_t seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  Verdict verdict = Verdict::pass;
  bool near_zero = false;
  nlohmann::json params = nlohmann::json::object();
  std::string note;

  bool passed() const noexcept { return verdict == Verdict::pass; }
};

/// Builds a report for lhs <= rhs.
GapReport make_gap(std::string name, double lhs, double rhs, double p = std::numeric_limits<double>::quiet_NaN(),
                   Tolerance tol = {});

/// Builds a report for an identity: lhs = deviation, rhs = threshold, and
/// pass iff deviation <= threshold (no extra slack).
GapReport make_deviation(std::string name, double deviation, double threshold,
                         double p = std::numeric_limits<double>::quiet_NaN());

/// Report for a check that threw; verdict degraded.
GapReport make_degraded(std::string name, std::string message,
                        double p = std::numeric_limits<double>::quiet_NaN());

/// Re-evaluates verdict and near_zero from lhs, rhs, gap.
void apply_tolerance(GapReport& r, Tolerance tol);

void to_json(nlohmann::json& j, const GapReport& r);
void from_json(const nlohmann::json& j, GapReport& r);

}  // namespace wyd
