#pragma once

// Batch verification: a suite expands a SuiteConfig into independent tasks,
// each task returns GapReports, and run_suite aggregates them in plan order
// regardless of how many worker threads ran them.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "wyd/gap_report.hpp"
#include "wyd/linalg.hpp"
#include "wyd/random.hpp"

namespace wyd {

/// Names of the built-in suites in execution order.
const std::vector<std::string>& builtin_suite_names();

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::vector<Index> dims{2, 3};
  std::vector<double> p_grid{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75};
  Index m = 2;
  int trials = 3;
  Tolerance tol;
  std::vector<std::string> suites = builtin_suite_names();
  std::string out;

  /// Throws InputError for empty/invalid dims (each in [1, 4]), p outside
  /// (0, 2], m < 1, trials < 0.
  void validate() const;
  nlohmann::json to_json() const;
  static SuiteConfig from_json(const nlohmann::json& j);
};

struct TaskContext {
  const SuiteConfig& config;
  std::uint64_t seed;
  double p;
  Index d;
  int trial;

  /// Fresh engine for this task; identical on every call.
  Engine engine() const;
};

using CheckFn = std::function<std::vector<GapReport>(const TaskContext&)>;

struct Task {
  std::string suite;
  std::string check;
  double p;
  Index d;
  int trial;
  std::uint64_t seed;
  CheckFn run;
};

struct SuiteDefinition {
  std::string name;
  std::function<std::vector<Task>(const SuiteConfig&)> plan;
};

class SuiteRegistry {
 public:
  /// Replaces an existing suite of the same name.
  void add(SuiteDefinition def);
  const SuiteDefinition* find(std::string_view name) const;
  std::vector<std::string> names() const;

  static const SuiteRegistry& builtin();

 private:
  std::vector<SuiteDefinition> defs_;
};

/// Seed of one task, a pure function of its coordinates.
std::uint64_t task_seed(std::uint64_t seed, std::string_view suite, std::string_view check,
                        Index d, double p, int trial);

/// Tasks over dims x p_grid x trials; `keep` filters (p, d).
std::vector<Task> grid_tasks(const SuiteConfig& cfg, const std::string& suite,
                             const std::string& check, CheckFn fn,
                             const std::function<bool(double, Index)>& keep = {});
/// Tasks over dims x trials with p unset.
std::vector<Task> plain_tasks(const SuiteConfig& cfg, const std::string& suite,
                              const std::string& check, CheckFn fn,
                              const std::function<bool(Index)>& keep = {});

struct SuiteSummary {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t near_zero = 0;
  std::size_t degraded = 0;
};

struct RunReport {
  nlohmann::json config = nlohmann::json::object();
  std::vector<GapReport> reports;
  std::map<std::string, SuiteSummary> summary;
  nlohmann::json versions = nlohmann::json::object();
  std::string timestamp;

  /// 1 if any check failed, else 3 if any degraded, else 0.
  int exit_code() const;
};

std::map<std::string, SuiteSummary> summarize(const std::vector<GapReport>& reports);

/// Worker count from WYDLAB_THREADS (positive integer), default hardware
/// concurrency. Throws InputError on a malformed value.
unsigned thread_count();

/// Runs tasks concurrently; results keep task order. Exceptions derived
/// from std::exception become degraded reports.
std::vector<GapReport> run_tasks(const std::vector<Task>& tasks, const SuiteConfig& cfg,
                                 unsigned threads);

/// threads == 0 means thread_count().
RunReport run_suite(const SuiteConfig& cfg, const SuiteRegistry& registry = SuiteRegistry::builtin(),
                    unsigned threads = 0);

}  // namespace wyd
