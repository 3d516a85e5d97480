// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "wyd/carlen_lieb.hpp"
#include "wyd/entropy.hpp"
#include "wyd/equality.hpp"
#include "wyd/inequalities.hpp"
#include "wyd/pauli.hpp"
#include "wyd/random.hpp"
#include "wyd/suite.hpp"
#include "wyd/variational.hpp"

using namespace wyd;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr double kGrid[] = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75};

int failures = 0;

void line(bool ok, const char* id, const std::string& what, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("[%s] %-3s %-34s %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
}

void info(const char* id, const std::string& what, const std::string& detail) {
  std::printf("[INFO] %-3s %-34s %s\n", id, what.c_str(), detail.c_str());
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Engine engine(std::string_view tag, std::uint64_t index, std::initializer_list<Index> dims = {}) {
  const std::vector<Index> v(dims);
  return make_engine(kSeed, tag, v, index);
}

// fn(i) for i in [0, n), spread over the available cores.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  const unsigned workers = std::max(1u, std::min<unsigned>(thread_count(), static_cast<unsigned>(n)));
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

// Worst value of a per-instance score (max), with the instance count.
struct Worst {
  std::vector<double> v;
  explicit Worst(std::size_t n, double init) : v(n, init) {}
  double max() const { return *std::max_element(v.begin(), v.end()); }
  double min() const { return *std::min_element(v.begin(), v.end()); }
};

// Normalised violation of a gap report: positive means outside tolerance.
double violation(const GapReport& r) {
  const double allowed = 1e-9 + 1e-9 * (std::abs(r.lhs) + std::abs(r.rhs));
  return -r.gap / allowed;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criterion_routes() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = 200;
  std::vector<double> ps(std::begin(kGrid), std::end(kGrid));
  Worst dm(n, 0.0), dq(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    const Index d = 2 + static_cast<Index>(i % 3);
    Engine rng = engine("acceptance.routes", i, {d});
    const Matrix k = ginibre(d, d, rng) / std::sqrt(static_cast<double>(d));
    const auto a = random_pd(d, rng);
    const auto b = random_pd(d, rng);
    for (double p : ps) {
      const double direct = j_p(k, a, b, p, Route::direct).value;
      const double scale = 1.0 + std::abs(direct);
      dm.v[i] = std::max(dm.v[i], std::abs(j_p(k, a, b, p, Route::modular).value - direct) / scale);
      dq.v[i] = std::max(dq.v[i], std::abs(j_p(k, a, b, p, Route::quadrature).value - direct) / scale);
    }
  });
  const double secs = seconds_since(t0);
  line(dm.max() <= 1e-8 && dq.max() <= 1e-6 && secs < 120.0, "1", "route agreement",
       fmt("direct~modular %.2e (<=1e-8), ~quadrature %.2e (<=1e-6), %.1fs", dm.max(), dq.max(), secs));
}

void criterion_convexity() {
  const std::size_t per_point = 200;
  std::vector<std::tuple<double, Index, Index>> points;
  for (double p : kGrid)
    for (Index d : {2, 3, 4})
      for (Index m : {2, 3}) points.emplace_back(p, d, m);
  const std::size_t n = points.size() * per_point;
  const char* names[] = {"J_p", "J~_p", "Lieb-Ando", "Upsilon^", "Phi^", "Psi^", "Schwarz", "p=2 form"};
  constexpr int kF = 8;
  std::vector<std::array<double, kF>> worst(n);
  parallel_for(n, [&](std::size_t i) {
    const auto [p, d, m] = points[i / per_point];
    Engine rng = engine("acceptance.convexity", i, {d, m});
    auto& w = worst[i];
    const auto fam = random_family(d, m, rng);
    w[0] = violation(subadditivity_gap(Functional::j_p, fam, p));
    w[1] = violation(subadditivity_gap(Functional::j_tilde_p, fam, 1.0 - p));
    const double r = p <= 1.0 ? (1.0 - p) / 2.0 : (1.0 + p) / 2.0;
    w[2] = violation(lieb_ando_gap(fam, p, r));
    std::vector<HermitianMatrix> as;
    std::vector<std::vector<HermitianMatrix>> blocks;
    std::vector<HermitianMatrix> bip;
    std::vector<SchwarzTerm> terms;
    std::vector<HermitianMatrix> p2a;
    std::vector<Matrix> p2x;
    for (Index j = 0; j < m; ++j) {
      as.push_back(random_pd(d, rng));
      blocks.push_back({random_pd(d, rng), random_pd(d, rng)});
      bip.push_back(random_pd(2 * d, rng));
      terms.push_back({random_pd(d, rng), random_pd(d, rng), ginibre(d, d, rng)});
      p2a.push_back(random_pd(d, rng));
      p2x.push_back(ginibre(d, d, rng));
    }
    w[3] = violation(upsilon_hat_subadditivity_gap(fam.k, as, p));
    w[4] = violation(phi_hat_subadditivity_gap(blocks, p));
    w[5] = violation(psi_hat_subadditivity_gap(bip, 2, d, p));
    std::uniform_real_distribution<double> ut(0.1, 3.0);
    w[6] = violation(schwarz_gap(terms, ut(rng)).report);
    w[7] = violation(p2_convexity_gap(p2a, p2x));
  });
  double overall = -1e300;
  std::string detail;
  for (int f = 0; f < kF; ++f) {
    double m = -1e300;
    for (const auto& w : worst) m = std::max(m, w[f]);
    overall = std::max(overall, m);
    if (m > 1.0) detail += std::string(names[f]) + " violated; ";
  }
  detail += fmt("%.0f instances x 8 functionals, worst gap/allowed %.2e", static_cast<double>(n), overall);
  line(overall <= 1.0, "2", "joint convexity", detail);
}

void criterion_monotonicity() {
  const std::size_t per_p = 200;
  const std::size_t n = per_p * std::size(kGrid);
  Worst worst(n, -1e300), ent(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    const double p = kGrid[i / per_p];
    const Index d2 = 2 + static_cast<Index>(i % 2);
    Engine rng = engine("acceptance.monotonicity", i, {d2});
    const auto a12 = random_pd(2 * d2, rng);
    const auto b12 = random_pd(2 * d2, rng);
    const Matrix v1 = random_unitary(2, rng);
    const Matrix k2 = ginibre(d2, d2, rng) / std::sqrt(static_cast<double>(d2));
    double w = violation(partial_trace_monotonicity_gap(k2, v1, a12, b12, 2, d2, p));
    const std::array<Index, 3> dims{2, d2, 2};
    const auto a123 = random_tripartite(dims, rng);
    const auto ssa = ssa_gap(a123, dims, p);
    w = std::max(w, violation(ssa));
    for (const auto& r : psi_monotonicity_gap(a123, dims, p)) w = std::max(w, violation(r));
    w = std::max(w, violation(triple_minkowski_gap(a123, dims, p)));
    worst.v[i] = w;
    if (p == 1.0) ent.v[i] = ssa.params["entropy_deviation"].get<double>();
  });
  line(worst.max() <= 1.0 && ent.max() <= 1e-10, "3", "monotonicity",
       fmt("worst gap/allowed %.2e, p=1 SSA entropy deviation %.2e (<=1e-10)", worst.max(), ent.max()));
}

void criterion_equality() {
  const std::size_t n = 60;
  Worst gap(n, 0.0), witness(n, 1e300);
  std::vector<int> incoherent(n, 0);
  parallel_for(n, [&](std::size_t i) {
    const Index d = 2 + static_cast<Index>(i % 3);
    Engine rng = engine("acceptance.equality", i, {d});
    // Constructed family A_j = A D^{-1} D_j, B_j = B D^{-1} D_j in a common eigenbasis.
    const Matrix u = random_unitary(d, rng);
    std::uniform_real_distribution<double> ua(0.2, 2.0), ud(0.1, 1.0);
    auto in_basis = [&](auto& dist) {
      RealVector v(d);
      for (Index k = 0; k < d; ++k) v(k) = dist(rng);
      return HermitianMatrix(u * v.cast<Complex>().asDiagonal() * u.adjoint());
    };
    const auto a = in_basis(ua);
    const auto b = in_basis(ua);
    std::vector<HermitianMatrix> ds{in_basis(ud), in_basis(ud), in_basis(ud)};
    const auto fam = construct_equality_family(a, b, ds);
    double g = 0.0;
    for (double p : kEqualityPSamples) g = std::max(g, std::abs(subadditivity_gap(Functional::j_p, fam, p).gap));
    const auto cond = check_equality_conditions(fam);
    if (!cond.all_pass()) incoherent[i] = 1;

    // Factorization and sufficiency on the same footing.
    if (!check_factorization_conditions(fam).all_pass()) incoherent[i] = 1;
    const SubalgebraSpec nsub{d, 2, Factor::first};
    const auto tau = random_density(2, rng);
    std::vector<HermitianMatrix> q;
    for (int j = 0; j < 3; ++j) q.push_back(kron(random_density(d, rng), tau));
    if (!sufficiency_check(nsub, q).all_pass()) incoherent[i] = 1;
    std::vector<HermitianMatrix> generic;
    for (int j = 0; j < 3; ++j) generic.push_back(random_density(2 * d, rng));
    if (!sufficiency_check(nsub, generic).coherent()) incoherent[i] = 1;
    if (!check_equality_conditions(random_family(d, 2, rng)).all_fail()) incoherent[i] = 1;

    // Structure state with a random basis change on H_2, then a 1e-2 perturbation of B^L.
    auto blocks = std::vector<StructureBlock>{};
    for (const auto& [dl, dr] : default_blocks(d)) {
      blocks.push_back({random_density(2 * dl, rng), random_density(dr, rng), random_density(dr, rng), std::nullopt});
    }
    const Matrix u2 = random_unitary(d, rng);
    const auto s = rotate_structure_state(construct_structure_state(blocks, 2), u2);
    const Matrix i1 = Matrix::Identity(2, 2), i2 = Matrix::Identity(d, d);
    for (double p : kEqualityPSamples) {
      g = std::max(g, std::abs(partial_trace_monotonicity_gap(i2, i1, s.a12, s.b12, 2, d, p).gap));
    }
    for (auto& blk : blocks) {
      blk.b_left = HermitianMatrix(0.99 * blk.a_left.matrix() + 0.01 * random_density(blk.a_left.dim(), rng).matrix());
    }
    const auto bad = rotate_structure_state(construct_structure_state(blocks, 2), u2);
    double w = 0.0;
    for (double p : kEqualityPSamples) {
      w = std::max(w, partial_trace_monotonicity_gap(i2, i1, bad.a12, bad.b12, 2, d, p).gap);
    }
    gap.v[i] = g;
    witness.v[i] = w;
  });
  const int bad = std::count(incoherent.begin(), incoherent.end(), 1);
  line(gap.max() <= 1e-9 && witness.min() >= 1e-6 && bad == 0, "4", "equality p-independence",
       fmt("max |gap| %.2e (<=1e-9), min perturbed gap %.2e (>=1e-6), incoherent verdicts %.0f", gap.max(),
           witness.min(), bad));
}

void criterion_variational() {
  const double ps[] = {1.25, 1.5, 1.75};
  const std::size_t per_p = 20;
  const std::size_t n = per_p * std::size(ps);
  Worst arg(n, 0.0), obj(n, 0.0);
  std::vector<int> errors(n, 0);
  parallel_for(n, [&](std::size_t i) {
    const double p = ps[i / per_p];
    const Index d = 2 + static_cast<Index>(i % 2);
    Engine rng = engine("acceptance.variational", i, {d});
    const Matrix k = ginibre(d, d, rng);
    const auto a = random_pd(d, rng);
    try {
      const auto r = upsilon_variational_check(k, a, p);
      arg.v[i] = (r.argmin.matrix() - r.closed_form.matrix()).norm();
      obj.v[i] = std::abs(r.objective - r.closed_objective);
    } catch (const std::exception&) {
      errors[i] = 1;
      arg.v[i] = obj.v[i] = std::numeric_limits<double>::infinity();
    }
  });
  const int errs = std::count(errors.begin(), errors.end(), 1);
  line(arg.max() <= 1e-5 && obj.max() <= 1e-6 && errs == 0, "5", "variational identity",
       fmt("argmin dev %.2e (<=1e-5), objective dev %.2e (<=1e-6), optimizer errors %.0f", arg.max(), obj.max(),
           errs));
}

void criterion_twirl() {
  double worst = 0.0;
  for (Index d = 2; d <= 5; ++d) {
    for (std::uint64_t i = 0; i < 100; ++i) {
      Engine rng = engine("acceptance.twirl", i, {d});
      const Matrix a = ginibre(d, d, rng);
      worst = std::max(worst, (pauli_average(a) - a.trace() * Matrix::Identity(d, d)).norm());
      const Matrix a12 = ginibre(2 * d, 2 * d, rng);
      const Matrix want = kron(Matrix(Matrix::Identity(2, 2)), partial_trace(a12, 2, d, Factor::first));
      worst = std::max(worst, (twirl_first_factor(a12, 2, d, random_unitary(2, rng)) - want).norm());
      const Matrix a21 = ginibre(d * 2, d * 2, rng);
      const Matrix want21 = kron(Matrix(Matrix::Identity(d, d)), partial_trace(a21, d, 2, Factor::first));
      worst = std::max(worst, (twirl_first_factor(a21, d, 2) - want21).norm());
    }
  }
  line(worst <= 1e-12, "6", "twirl identities", fmt("max residual %.2e (<=1e-12)", worst));
}

void criterion_schwarz() {
  const std::size_t n = 200;
  Worst dev(n, 0.0), eq(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    const Index d = 2 + static_cast<Index>(i % 3);
    const std::size_t m = 2 + i % 2;
    Engine rng = engine("acceptance.schwarz", i, {d});
    std::uniform_real_distribution<double> ut(0.1, 3.0);
    std::vector<SchwarzTerm> terms;
    for (std::size_t j = 0; j < m; ++j) terms.push_back({random_pd(d, rng), random_pd(d, rng), ginibre(d, d, rng)});
    dev.v[i] = schwarz_gap(terms, ut(rng)).identity_deviation;
    const Matrix t = ginibre(d, d, rng);
    std::vector<SchwarzTerm> eqt;
    for (std::size_t j = 0; j < m; ++j) {
      const auto aj = random_pd(d, rng);
      eqt.push_back({aj, random_pd(d, rng), aj.matrix() * t});
    }
    eq.v[i] = std::abs(schwarz_gap(eqt, 0.0).report.gap);
  });
  line(dev.max() <= 1e-9 && eq.max() <= 1e-10, "7", "appendix residual identity",
       fmt("|gap - sum ||M_j||^2| %.2e (<=1e-9), X_j = A_j T gap %.2e (<=1e-10)", dev.max(), eq.max()));
}

void criterion_klein() {
  const std::size_t n = 500;
  Worst neg(n, -1e300), literal(n, 0.0), adjoint(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    const Index d = 2 + static_cast<Index>(i % 3);
    Engine rng = engine("acceptance.klein", i, {d});
    const auto a = random_density(d, rng);
    const auto b = random_density(d, rng);
    const Matrix u = random_unitary(d, rng);
    const HermitianMatrix uau(u * a.matrix() * u.adjoint());
    const HermitianMatrix uau_star(u.adjoint() * a.matrix() * u);
    for (double p : kGrid) {
      neg.v[i] = std::max(neg.v[i], -klein_gap(u, a, b, p));
      literal.v[i] = std::max(literal.v[i], klein_gap(u, a, uau, p));
      adjoint.v[i] = std::max(adjoint.v[i], std::abs(klein_gap(u, a, uau_star, p)));
    }
  });
  line(neg.max() <= 1e-9 && literal.max() <= 1e-10, "8", "Klein-type positivity",
       fmt("min J_p %.2e (>=-1e-9), J_p at B = U A U^* max %.2e (<=1e-10)", -neg.max(), literal.max()));
  info("8", "Klein zero case, B = U^* A U", fmt("max |J_p| %.2e (<=1e-10)", adjoint.max()));
}

void criterion_block_identity() {
  const std::size_t n = 100;
  Worst worst(n, 0.0);
  std::vector<int> fails(n, 0);
  parallel_for(n, [&](std::size_t i) {
    const Index d2 = 2 + static_cast<Index>(i % 2);
    const Index d1 = 1 + static_cast<Index>((i / 2) % 3);
    Engine rng = engine("acceptance.psi_block", i, {d1, d2});
    const auto a12 = random_pd(d1 * d2, rng);
    for (double p : {0.5, 1.5}) {
      const auto r = psi_block_identity(a12, d1, d2, p);
      const auto& v = r.params["values"];
      worst.v[i] = std::max(worst.v[i], std::abs(v[0].get<double>() - v[1].get<double>()) /
                                            std::max(1.0, std::abs(v[0].get<double>())));
      if (!r.passed()) fails[i] = 1;
    }
  });
  line(worst.max() <= 1e-9, "9", "Psi block identity", fmt("max relative deviation %.2e (<=1e-9)", worst.max()));
}

void criterion_determinism() {
  SuiteConfig cfg;
  cfg.seed = kSeed;
  const auto a = run_suite(cfg, SuiteRegistry::builtin(), 1);
  const auto b = run_suite(cfg, SuiteRegistry::builtin(), 0);
  bool same = a.reports.size() == b.reports.size() && !a.reports.empty();
  for (std::size_t i = 0; same && i < a.reports.size(); ++i) {
    same = a.reports[i].name == b.reports[i].name &&
           std::memcmp(&a.reports[i].gap, &b.reports[i].gap, sizeof(double)) == 0 &&
           std::memcmp(&a.reports[i].lhs, &b.reports[i].lhs, sizeof(double)) == 0 &&
           std::memcmp(&a.reports[i].rhs, &b.reports[i].rhs, sizeof(double)) == 0;
  }
  line(same && a.exit_code() == 0, "10", "determinism",
       fmt("%.0f gap values bit-identical across two full runs, suite exit code %.0f",
           static_cast<double>(a.reports.size()), a.exit_code()));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_routes();
  criterion_convexity();
  criterion_monotonicity();
  criterion_equality();
  criterion_variational();
  criterion_twirl();
  criterion_schwarz();
  criterion_klein();
  criterion_block_identity();
  criterion_determinism();
  std::printf("%d of 10 criteria failed (%.1fs)\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
