// wydlab: seeded instance generation and batch verification of the J_p
// inequalities.
//
//   wydlab gen --kind pd --dims 3 --seed 7 --out run/
//   wydlab check --suite convexity,ssa --dims 2,3 --p-grid 0.25,0.5,1 --out run/
//   wydlab sweep --suite convexity --p-grid 0.05:1.95:0.1 --out run/
//   wydlab report --out run/
//
// Exit status: 0 all pass, 1 inequality violation, 2 input error, 3 degraded.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wyd/errors.hpp"
#include "wyd/random.hpp"
#include "wyd/report_io.hpp"
#include "wyd/suite.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw wyd::InputError("not a number: '" + s + "'");
  }
  return x;
}

// "0.25,0.5,1" or "lo:hi:step".
std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw wyd::InputError("range must be lo:hi:step");
    const double lo = parse_double(parts[0]);
    const double hi = parse_double(parts[1]);
    const double step = parse_double(parts[2]);
    if (!(step > 0.0) || hi < lo) throw wyd::InputError("bad range '" + s + "'");
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
  }
  for (const auto& part : split(s, ',')) out.push_back(parse_double(part));
  return out;
}

std::vector<wyd::Index> parse_dims(const std::string& s) {
  std::vector<wyd::Index> out;
  for (const auto& part : split(s, ',')) {
    wyd::Index d = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), d);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw wyd::InputError("not an integer: '" + part + "'");
    }
    out.push_back(d);
  }
  return out;
}

std::vector<std::string> parse_suites(const std::string& s) {
  if (s == "all") return wyd::builtin_suite_names();
  if (s.empty() || s == "none") return {};
  return split(s, ',');
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

struct RunOptions {
  std::uint64_t seed = 1;
  double tol = -1.0;
  std::string p_grid;
  std::string dims;
  int trials = -1;
  long m = -1;
  std::string suite = "all";
  std::string out;
  bool no_timestamp = false;
};

void add_run_flags(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--seed", o.seed, "Base seed");
  cmd->add_option("--tol", o.tol, "Absolute and relative tolerance (default 1e-9)");
  cmd->add_option("--p-grid", o.p_grid, "Comma list or lo:hi:step");
  cmd->add_option("--dims", o.dims, "Comma list of dimensions in [1, 4]");
  cmd->add_option("--trials", o.trials, "Random instances per grid point");
  cmd->add_option("--m", o.m, "Family size");
  cmd->add_option("--suite", o.suite, "Comma list of suites, 'all' or 'none'");
  cmd->add_option("--out", o.out, "Output directory for report.json and report.csv");
  cmd->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp field");
}

wyd::SuiteConfig make_config(const RunOptions& o, bool sweep) {
  wyd::SuiteConfig c;
  c.seed = o.seed;
  if (sweep) {
    c.p_grid = parse_grid("0.05:1.95:0.1");
    c.trials = 1;
  }
  if (o.tol >= 0.0) c.tol = {o.tol, o.tol};
  if (!o.p_grid.empty()) c.p_grid = parse_grid(o.p_grid);
  if (sweep) std::sort(c.p_grid.begin(), c.p_grid.end());
  if (!o.dims.empty()) c.dims = parse_dims(o.dims);
  if (o.trials >= 0) c.trials = o.trials;
  if (o.m >= 0) c.m = o.m;
  c.suites = parse_suites(o.suite);
  c.out = o.out;
  return c;
}

void print_summary(const wyd::RunReport& r) {
  std::printf("%-14s %7s %7s %9s %9s\n", "suite", "pass", "fail", "near-zero", "degraded");
  for (const auto& [suite, s] : r.summary) {
    std::printf("%-14s %7zu %7zu %9zu %9zu\n", suite.c_str(), s.pass, s.fail, s.near_zero,
                s.degraded);
  }
  for (const auto& g : r.reports) {
    if (g.verdict == wyd::Verdict::pass) continue;
    std::printf("%s %s p=%g d=%lld seed=%llu gap=%.6g %s\n", std::string(wyd::to_string(g.verdict)).c_str(),
                g.name.c_str(), g.p, static_cast<long long>(g.d),
                static_cast<unsigned long long>(g.seed), g.gap, g.note.c_str());
  }
}

int run(const RunOptions& o, bool sweep) {
  const auto cfg = make_config(o, sweep);
  auto rep = wyd::run_suite(cfg);
  if (!o.no_timestamp) rep.timestamp = utc_timestamp();
  if (!o.out.empty()) {
    wyd::emit(rep, wyd::ReportFormat::json, o.out);
    const auto csv = wyd::emit(rep, wyd::ReportFormat::csv, o.out);
    std::printf("wrote %s\n", csv.parent_path().string().c_str());
  }
  print_summary(rep);
  return rep.exit_code();
}

int gen(const std::string& kind, const std::string& dims, std::uint64_t seed, std::uint64_t index,
        const std::string& out) {
  const auto d = parse_dims(dims);
  const auto inst = wyd::random_instance(wyd::instance_kind_from_string(kind), d, seed, index);
  const std::string text = inst.to_json().dump(2);
  if (out.empty()) {
    std::cout << text << '\n';
    return 0;
  }
  std::filesystem::create_directories(out);
  const auto path = std::filesystem::path(out) / "instance.json";
  std::ofstream f(path);
  if (!(f << text << '\n')) throw wyd::InputError("cannot write " + path.string());
  std::printf("wrote %s\n", path.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wydlab: numerical checks for J_p convexity, monotonicity and equality"};
  app.require_subcommand(1);

  std::string kind = "density";
  std::string gen_dims = "2";
  std::uint64_t gen_seed = 1;
  std::uint64_t gen_index = 0;
  std::string gen_out;
  auto* g = app.add_subcommand("gen", "Write one seeded random instance as JSON");
  g->add_option("--kind", kind,
                "density|pd|unitary|contraction|family|tripartite|structure_state");
  g->add_option("--dims", gen_dims, "Comma list of dimensions");
  g->add_option("--seed", gen_seed, "Seed");
  g->add_option("--index", gen_index, "Draw index");
  g->add_option("--out", gen_out, "Output directory (stdout if omitted)");

  RunOptions check_opts;
  auto* c = app.add_subcommand("check", "Run suites and report pass/fail");
  add_run_flags(c, check_opts);

  RunOptions sweep_opts;
  sweep_opts.suite = "convexity";
  auto* s = app.add_subcommand("sweep", "Run suites over a dense p grid, one trial per point");
  add_run_flags(s, sweep_opts);

  std::string report_dir;
  auto* r = app.add_subcommand("report", "Summarize an existing report.json");
  r->add_option("--out", report_dir, "Directory holding report.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (g->parsed()) return gen(kind, gen_dims, gen_seed, gen_index, gen_out);
    if (c->parsed()) return run(check_opts, false);
    if (s->parsed()) return run(sweep_opts, true);
    const auto rep = wyd::read_report(std::filesystem::path(report_dir) / "report.json");
    print_summary(rep);
    return rep.exit_code();
  } catch (const wyd::NumericalError& e) {
    std::fprintf(stderr, "wydlab: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "wydlab: %s\n", e.what());
    return kExitInput;
  }
}
