#include "wyd/suite.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <thread>

#include "wyd/errors.hpp"

namespace wyd {

const std::vector<std::string>& builtin_suite_names() {
  static const std::vector<std::string> names{"convexity", "monotonicity", "ssa",
                                              "carlen-lieb", "equality", "appendix"};
  return names;
}

void SuiteConfig::validate() const {
  if (dims.empty()) throw InputError("config: dims is empty");
  for (Index d : dims) {
    if (d < 1 || d > 4) throw InputError("config: dims must lie in [1, 4]");
  }
  for (double p : p_grid) {
    if (!(p > 0.0 && p <= 2.0)) throw InputError("config: p values must lie in (0, 2]");
  }
  if (m < 1) throw InputError("config: m must be at least 1");
  if (trials < 0) throw InputError("config: trials must be nonnegative");
  if (!(tol.atol >= 0.0) || !(tol.rtol >= 0.0)) throw InputError("config: negative tolerance");
}

nlohmann::json SuiteConfig::to_json() const {
  return {{"seed", seed},   {"dims", dims},           {"p_grid", p_grid},
          {"m", m},         {"trials", trials},       {"atol", tol.atol},
          {"rtol", tol.rtol}, {"suites", suites},     {"out", out}};
}

SuiteConfig SuiteConfig::from_json(const nlohmann::json& j) {
  SuiteConfig c;
  try {
    c.seed = j.at("seed").get<std::uint64_t>();
    c.dims = j.at("dims").get<std::vector<Index>>();
    c.p_grid = j.at("p_grid").get<std::vector<double>>();
    c.m = j.at("m").get<Index>();
    c.trials = j.at("trials").get<int>();
    c.tol.atol = j.at("atol").get<double>();
    c.tol.rtol = j.at("rtol").get<double>();
    c.suites = j.at("suites").get<std::vector<std::string>>();
    c.out = j.value("out", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  return c;
}

Engine TaskContext::engine() const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return Engine(seq);
}

void SuiteRegistry::add(SuiteDefinition def) {
  for (auto& d : defs_) {
    if (d.name == def.name) {
      d = std::move(def);
      return;
    }
  }
  defs_.push_back(std::move(def));
}

const SuiteDefinition* SuiteRegistry::find(std::string_view name) const {
  for (const auto& d : defs_) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

std::vector<std::string> SuiteRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& d : defs_) out.push_back(d.name);
  return out;
}

std::uint64_t task_seed(std::uint64_t seed, std::string_view suite, std::string_view check,
                        Index d, double p, int trial) {
  const std::string tag = std::string(suite) + "/" + std::string(check);
  const auto bits = std::bit_cast<std::uint64_t>(p);
  // make_engine folds each coordinate to 32 bits; split p so no bits are lost.
  const std::array<Index, 3> coords{d, static_cast<Index>(bits >> 32),
                                    static_cast<Index>(bits & 0xffffffffULL)};
  Engine e = make_engine(seed, tag, coords, static_cast<std::uint64_t>(trial));
  return e();
}

std::vector<Task> grid_tasks(const SuiteConfig& cfg, const std::string& suite,
                             const std::string& check, CheckFn fn,
                             const std::function<bool(double, Index)>& keep) {
  std::vector<Task> out;
  for (Index d : cfg.dims) {
    for (double p : cfg.p_grid) {
      if (keep && !keep(p, d)) continue;
      for (int t = 0; t < cfg.trials; ++t) {
        out.push_back({suite, check, p, d, t, task_seed(cfg.seed, suite, check, d, p, t), fn});
      }
    }
  }
  return out;
}

std::vector<Task> plain_tasks(const SuiteConfig& cfg, const std::string& suite,
                              const std::string& check, CheckFn fn,
                              const std::function<bool(Index)>& keep) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<Task> out;
  for (Index d : cfg.dims) {
    if (keep && !keep(d)) continue;
    for (int t = 0; t < cfg.trials; ++t) {
      out.push_back({suite, check, nan, d, t, task_seed(cfg.seed, suite, check, d, 0.0, t), fn});
    }
  }
  return out;
}

int RunReport::exit_code() const {
  bool degraded = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::fail) return 1;
    degraded = degraded || r.verdict == Verdict::degraded;
  }
  return degraded ? 3 : 0;
}

std::map<std::string, SuiteSummary> summarize(const std::vector<GapReport>& reports) {
  std::map<std::string, SuiteSummary> out;
  for (const auto& r : reports) {
    auto& s = out[r.suite];
    switch (r.verdict) {
      case Verdict::pass: ++s.pass; break;
      case Verdict::fail: ++s.fail; break;
      case Verdict::degraded: ++s.degraded; break;
    }
    if (r.near_zero) ++s.near_zero;
  }
  return out;
}

unsigned thread_count() {
  const char* env = std::getenv("WYDLAB_THREADS");
  if (env == nullptr || *env == '\0') return std::max(1u, std::thread::hardware_concurrency());
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) {
    throw InputError("WYDLAB_THREADS must be a positive integer, got '" + std::string(env) + "'");
  }
  return static_cast<unsigned>(n);
}

namespace {

std::vector<GapReport> run_one(const Task& task, const SuiteConfig& cfg) {
  const TaskContext ctx{cfg, task.seed, task.p, task.d, task.trial};
  const std::string where = task.suite + "." + task.check;
  std::vector<GapReport> out;
  try {
    out = task.run(ctx);
  } catch (const std::exception& e) {
    out = {make_degraded(where, e.what(), task.p)};
  }
  for (auto& r : out) {
    r.suite = task.suite;
    if (std::isnan(r.p)) r.p = task.p;
    if (r.d == 0) r.d = task.d;
    r.seed = task.seed;
    r.params["trial"] = task.trial;
  }
  return out;
}

}  // namespace

std::vector<GapReport> run_tasks(const std::vector<Task>& tasks, const SuiteConfig& cfg,
                                 unsigned threads) {
  std::vector<std::vector<GapReport>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) slots[i] = run_one(tasks[i], cfg);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  std::vector<GapReport> out;
  for (auto& s : slots) {
    for (auto& r : s) out.push_back(std::move(r));
  }
  return out;
}

RunReport run_suite(const SuiteConfig& cfg, const SuiteRegistry& registry, unsigned threads) {
  cfg.validate();
  std::vector<Task> tasks;
  for (const auto& name : cfg.suites) {
    const auto* def = registry.find(name);
    if (def == nullptr) throw InputError("unknown suite '" + name + "'");
    auto planned = def->plan(cfg);
    std::move(planned.begin(), planned.end(), std::back_inserter(tasks));
  }
  RunReport rep;
  rep.config = cfg.to_json();
  rep.reports = run_tasks(tasks, cfg, threads == 0 ? thread_count() : threads);
  rep.summary = summarize(rep.reports);
  rep.versions = {{"wydlab", WYDLAB_VERSION},
                  {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                std::to_string(EIGEN_MINOR_VERSION)},
                  {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                        std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                        std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  return rep;
}

}  // namespace wyd
