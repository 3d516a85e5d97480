#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "wyd/carlen_lieb.hpp"
#include "wyd/entropy.hpp"
#include "wyd/equality.hpp"
#include "wyd/inequalities.hpp"
#include "wyd/suite.hpp"
#include "wyd/variational.hpp"
#include "wyd/wedderburn.hpp"

namespace wyd {

namespace {

using Reports = std::vector<GapReport>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double uniform(double lo, double hi, Engine& rng) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

HermitianMatrix in_basis(const Matrix& u, const RealVector& v) {
  return HermitianMatrix(u * v.cast<Complex>().asDiagonal() * u.adjoint());
}

RealVector uniform_vector(Index n, double lo, double hi, Engine& rng) {
  RealVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = uniform(lo, hi, rng);
  return v;
}

// Passes when the deviation reaches the threshold (non-equality witness).
GapReport witness(std::string name, double deviation, double threshold) {
  return make_gap(std::move(name), threshold, deviation, kNaN, Tolerance{0.0, 0.0});
}

Reports witness_reports(const std::string& prefix, const EqualityVerdicts& v) {
  Reports out;
  for (const auto& c : v.checks) out.push_back(witness(prefix + "." + c.name, c.max_deviation, c.threshold));
  out.push_back(make_deviation(prefix + ".coherent", v.coherent() ? 0.0 : 1.0, 0.5));
  return out;
}

void append(Reports& out, Reports more) {
  std::move(more.begin(), more.end(), std::back_inserter(out));
}

std::vector<HermitianMatrix> pd_list(Index d, Index m, Engine& rng) {
  std::vector<HermitianMatrix> out;
  for (Index j = 0; j < m; ++j) out.push_back(random_pd(d, rng));
  return out;
}

std::vector<StructureBlock> structure_blocks(Index d1, Index d2, Engine& rng) {
  std::vector<StructureBlock> blocks;
  for (const auto& [dl, dr] : default_blocks(d2)) {
    blocks.push_back(
        {random_density(d1 * dl, rng), random_density(dr, rng), random_density(dr, rng), std::nullopt});
  }
  return blocks;
}

// K = I, V1 = I monotonicity gap of a bipartite pair.
GapReport structure_gap(const StructureState& s, double p) {
  return partial_trace_monotonicity_gap(Matrix::Identity(s.d2, s.d2), Matrix::Identity(s.d1, s.d1),
                                        s.a12, s.b12, s.d1, s.d2, p);
}

// ---- convexity

Reports convexity_j(const TaskContext& c) {
  Engine rng = c.engine();
  return {subadditivity_gap(Functional::j_p, random_family(c.d, c.config.m, rng), c.p, c.config.tol)};
}

Reports convexity_j_tilde(const TaskContext& c) {
  Engine rng = c.engine();
  return {subadditivity_gap(Functional::j_tilde_p, random_family(c.d, c.config.m, rng), c.p,
                            c.config.tol)};
}

Reports convexity_lieb_ando(const TaskContext& c) {
  Engine rng = c.engine();
  const double r = c.p <= 1.0 ? 0.5 * (1.0 - c.p) : 0.5 * (1.0 + c.p);
  auto rep = lieb_ando_gap(random_family(c.d, c.config.m, rng), c.p, r, c.config.tol);
  rep.params["r"] = r;
  return {rep};
}

Reports convexity_jensen(const TaskContext& c) {
  Engine rng = c.engine();
  const auto a1 = random_pd(c.d, rng);
  const auto a2 = random_pd(c.d, rng);
  const double lambda = uniform(0.1, 0.9, rng);
  Reports out;
  const double s = 0.5 * c.p;
  auto r = make_gap("convexity.operator_jensen", 0.0,
                    operator_jensen_gap({JensenFunction::Kind::power, s}, a1, a2, lambda), c.p,
                    c.config.tol);
  r.params["s"] = s;
  out.push_back(r);
  if (c.p == 1.0) {
    out.push_back(make_gap("convexity.operator_jensen_log", 0.0,
                           operator_jensen_gap({JensenFunction::Kind::log, 0.0}, a1, a2, lambda),
                           c.p, c.config.tol));
  }
  return out;
}

Reports convexity_block(const TaskContext& c) {
  Engine rng = c.engine();
  return {block_additivity_check(random_family(c.d, c.config.m, rng), c.p)};
}

Reports convexity_klein(const TaskContext& c) {
  Engine rng = c.engine();
  const auto a = random_density(c.d, rng);
  const auto b = random_density(c.d, rng);
  const Matrix u = random_unitary(c.d, rng);
  return {make_gap("convexity.klein", 0.0, klein_gap(u, a, b, c.p), c.p, c.config.tol)};
}

Reports convexity_wyd(const TaskContext& c) {
  Engine rng = c.engine();
  const Matrix k = random_hermitian(c.d, rng).matrix();
  const auto gamma = random_density(c.d, rng);
  return {make_gap("convexity.wyd_skew", 0.0, wyd_skew(k, gamma, c.p), c.p, c.config.tol)};
}

std::vector<Task> plan_convexity(const SuiteConfig& cfg) {
  const std::string s = "convexity";
  std::vector<Task> out;
  auto add = [&](std::vector<Task> t) { std::move(t.begin(), t.end(), std::back_inserter(out)); };
  add(grid_tasks(cfg, s, "j_p", convexity_j));
  // J~ runs on q = 1 - p; reverse the grid so q ascends.
  std::vector<double> q;
  for (auto it = cfg.p_grid.rbegin(); it != cfg.p_grid.rend(); ++it) {
    if (*it < 2.0) q.push_back(1.0 - *it);
  }
  for (Index d : cfg.dims) {
    for (double x : q) {
      for (int t = 0; t < cfg.trials; ++t) {
        out.push_back({s, "j_tilde_p", x, d, t, task_seed(cfg.seed, s, "j_tilde_p", d, x, t),
                       convexity_j_tilde});
      }
    }
  }
  add(grid_tasks(cfg, s, "lieb_ando", convexity_lieb_ando));
  add(grid_tasks(cfg, s, "operator_jensen", convexity_jensen, [](double p, Index) { return p < 2.0; }));
  add(grid_tasks(cfg, s, "block_additivity", convexity_block));
  add(grid_tasks(cfg, s, "klein", convexity_klein));
  add(grid_tasks(cfg, s, "wyd_skew", convexity_wyd, [](double p, Index) { return p <= 1.0; }));
  return out;
}

// ---- monotonicity

Reports monotonicity_partial_trace(const TaskContext& c) {
  Engine rng = c.engine();
  const Index d1 = 2;
  const Matrix k2 = ginibre(c.d, c.d, rng) / std::sqrt(static_cast<double>(c.d));
  const Matrix v1 = random_unitary(d1, rng);
  const auto a12 = random_pd(d1 * c.d, rng);
  const auto b12 = random_pd(d1 * c.d, rng);
  return {partial_trace_monotonicity_gap(k2, v1, a12, b12, d1, c.d, c.p, c.config.tol)};
}

Reports monotonicity_lifted(const TaskContext& c) {
  Engine rng = c.engine();
  const Index d1 = 2;
  const Matrix k2 = ginibre(c.d, c.d, rng) / std::sqrt(static_cast<double>(c.d));
  const Matrix v1 = random_unitary(d1, rng);
  const auto id1 = HermitianMatrix::identity(d1);
  const auto a12 = kron(id1, random_pd(c.d, rng));
  const auto b12 = kron(id1, random_pd(c.d, rng));
  auto r = partial_trace_monotonicity_gap(k2, v1, a12, b12, d1, c.d, c.p, c.config.tol);
  r.name = "monotonicity.partial_trace_lifted";
  return {r};
}

std::vector<Task> plan_monotonicity(const SuiteConfig& cfg) {
  auto out = grid_tasks(cfg, "monotonicity", "partial_trace", monotonicity_partial_trace);
  auto more = grid_tasks(cfg, "monotonicity", "partial_trace_lifted", monotonicity_lifted);
  std::move(more.begin(), more.end(), std::back_inserter(out));
  return out;
}

// ---- ssa

Reports ssa_check(const TaskContext& c) {
  Engine rng = c.engine();
  const std::array<Index, 3> dims{2, c.d, 2};
  auto r = ssa_gap(random_tripartite(dims, rng), dims, c.p, c.config.tol);
  Reports out{r};
  if (r.params.contains("entropy_deviation")) {
    out.push_back(make_deviation("monotonicity.ssa_entropy",
                                 r.params["entropy_deviation"].get<double>(), 1e-10, c.p));
  }
  return out;
}

std::vector<Task> plan_ssa(const SuiteConfig& cfg) { return grid_tasks(cfg, "ssa", "ssa", ssa_check); }

// ---- carlen-lieb

Reports cl_upsilon_hat(const TaskContext& c) {
  Engine rng = c.engine();
  const Matrix k = ginibre(c.d, c.d, rng) / std::sqrt(static_cast<double>(c.d));
  return {upsilon_hat_subadditivity_gap(k, pd_list(c.d, c.config.m, rng), c.p, c.config.tol)};
}

Reports cl_phi_hat(const TaskContext& c) {
  Engine rng = c.engine();
  std::vector<std::vector<HermitianMatrix>> fams;
  for (Index j = 0; j < c.config.m; ++j) fams.push_back(pd_list(c.d, 2, rng));
  return {phi_hat_subadditivity_gap(fams, c.p, c.config.tol)};
}

Reports cl_psi_hat(const TaskContext& c) {
  Engine rng = c.engine();
  return {psi_hat_subadditivity_gap(pd_list(2 * c.d, c.config.m, rng), 2, c.d, c.p, c.config.tol)};
}

Reports cl_psi_mono(const TaskContext& c) {
  Engine rng = c.engine();
  const std::array<Index, 3> dims{2, c.d, 2};
  const auto r = psi_monotonicity_gap(random_tripartite(dims, rng), dims, c.p, c.config.tol);
  return {r[0], r[1]};
}

Reports cl_triple(const TaskContext& c) {
  Engine rng = c.engine();
  const std::array<Index, 3> dims{2, c.d, 2};
  return {triple_minkowski_gap(random_tripartite(dims, rng), dims, c.p, c.config.tol)};
}

Reports cl_block(const TaskContext& c) {
  Engine rng = c.engine();
  return {psi_block_identity(random_pd(2 * c.d, rng), 2, c.d, c.p)};
}

Reports cl_variational(const TaskContext& c) {
  Engine rng = c.engine();
  const Matrix k = ginibre(c.d, c.d, rng) / std::sqrt(static_cast<double>(c.d));
  const auto res = upsilon_variational_check(k, random_pd(c.d, rng), c.p);
  return {res.reports.begin(), res.reports.end()};
}

std::vector<Task> plan_carlen_lieb(const SuiteConfig& cfg) {
  const std::string s = "carlen-lieb";
  const auto below2 = [](double p, Index) { return p < 2.0; };
  std::vector<Task> out;
  auto add = [&](std::vector<Task> t) { std::move(t.begin(), t.end(), std::back_inserter(out)); };
  add(grid_tasks(cfg, s, "upsilon_hat", cl_upsilon_hat, below2));
  add(grid_tasks(cfg, s, "phi_hat", cl_phi_hat, below2));
  add(grid_tasks(cfg, s, "psi_hat", cl_psi_hat, below2));
  add(grid_tasks(cfg, s, "psi_monotonicity", cl_psi_mono, below2));
  add(grid_tasks(cfg, s, "triple_minkowski", cl_triple));
  add(grid_tasks(cfg, s, "psi_block", cl_block, [](double, Index d) { return d >= 2; }));
  add(grid_tasks(cfg, s, "variational", cl_variational,
                 [](double p, Index d) { return p > 1.0 && p < 2.0 && d >= 2 && d <= 3; }));
  return out;
}

// ---- equality

struct CommonBasis {
  HermitianMatrix a;
  HermitianMatrix b;
  std::vector<HermitianMatrix> d;
};

CommonBasis common_basis(Index dim, Index m, Engine& rng) {
  const Matrix u = random_unitary(dim, rng);
  CommonBasis out{in_basis(u, uniform_vector(dim, 0.2, 2.0, rng)),
                  in_basis(u, uniform_vector(dim, 0.2, 2.0, rng)), {}};
  for (Index j = 0; j < m; ++j) out.d.push_back(in_basis(u, uniform_vector(dim, 0.1, 1.0, rng)));
  return out;
}

Reports eq_family(const TaskContext& c) {
  Engine rng = c.engine();
  const auto cb = common_basis(c.d, std::max<Index>(c.config.m, 2), rng);
  const auto fam = construct_equality_family(cb.a, cb.b, cb.d);
  Reports out = check_equality_conditions(fam).to_reports("equality.constructed");

  // Proportional split with a general K.
  InstanceFamily prop{ginibre(c.d, c.d, rng), {}, {}};
  const auto a = random_pd(c.d, rng);
  const auto b = random_pd(c.d, rng);
  for (double w : {0.2, 0.3, 0.5}) {
    prop.a.push_back(w * a);
    prop.b.push_back(w * b);
  }
  append(out, check_equality_conditions(prop).to_reports("equality.proportional"));
  return out;
}

Reports eq_generic(const TaskContext& c) {
  Engine rng = c.engine();
  const auto v = check_equality_conditions(random_family(c.d, std::max<Index>(c.config.m, 2), rng));
  Reports out;
  for (const auto& ch : v.checks) {
    // b and friends must fail clearly; 1e-6 is the witness floor.
    out.push_back(witness("equality.generic." + ch.name, ch.max_deviation, 1e-6));
  }
  out.push_back(make_deviation("equality.generic.coherent", v.coherent() ? 0.0 : 1.0, 0.5));
  return out;
}

Reports eq_factorization(const TaskContext& c) {
  Engine rng = c.engine();
  const Index d = std::max<Index>(c.d, 2);
  const Matrix u = random_unitary(d, rng);
  // Orthogonal supports: the first half and the rest of a random basis.
  InstanceFamily fam{Matrix::Identity(d, d), {}, {}};
  for (int part = 0; part < 2; ++part) {
    RealVector va = uniform_vector(d, 0.2, 2.0, rng);
    RealVector vb = uniform_vector(d, 0.2, 2.0, rng);
    for (Index i = 0; i < d; ++i) {
      if ((i < d / 2) == (part == 1)) va(i) = vb(i) = 0.0;
    }
    fam.a.push_back(in_basis(u, va));
    fam.b.push_back(in_basis(u, vb));
  }
  Reports out = check_factorization_conditions(fam).to_reports("equality.factorization.blocks");

  // Constructed family with singular D_j.
  RealVector e1 = RealVector::Zero(d);
  e1(0) = 1.0;
  const auto fam2 = construct_equality_family(in_basis(u, uniform_vector(d, 0.2, 2.0, rng)),
                                              in_basis(u, uniform_vector(d, 0.2, 2.0, rng)),
                                              {in_basis(u, e1), in_basis(u, RealVector::Ones(d) - e1)});
  append(out, check_factorization_conditions(fam2).to_reports("equality.factorization.constructed"));
  return out;
}

Reports eq_sufficiency(const TaskContext& c) {
  Engine rng = c.engine();
  const SubalgebraSpec n{c.d, 2, Factor::first};
  const auto tau = random_density(2, rng);
  std::vector<HermitianMatrix> q;
  for (int j = 0; j < 3; ++j) q.push_back(kron(random_density(c.d, rng), tau));
  Reports out = sufficiency_check(n, q).to_reports("equality.sufficiency.product");

  std::vector<HermitianMatrix> generic;
  for (int j = 0; j < 3; ++j) generic.push_back(random_density(2 * c.d, rng));
  append(out, witness_reports("equality.sufficiency.generic", sufficiency_check(n, generic)));

  const auto a = random_pd(2 * c.d, rng);
  const Matrix e = conditional_expectation(n, a.matrix());
  out.push_back(make_deviation("equality.conditional_expectation.trace",
                               std::abs(e.trace().real() - a.trace()), 1e-12));
  out.push_back(make_deviation("equality.conditional_expectation.idempotent",
                               relative_deviation(conditional_expectation(n, e), e), 1e-12));
  return out;
}

Reports eq_dilation(const TaskContext& c) {
  Engine rng = c.engine();
  const Matrix k = random_contraction(c.d, rng);
  const auto a = random_pd(c.d, rng);
  const auto b = random_pd(c.d, rng);
  Reports out;
  for (double p : kEqualityPSamples) out.push_back(dilation_embedding_check(k, a, b, p));
  return out;
}

Reports eq_unitary(const TaskContext& c) {
  Engine rng = c.engine();
  auto fam = random_family(c.d, c.config.m, rng);
  fam.k = random_unitary(c.d, rng);
  Reports out;
  for (double p : kEqualityPSamples) {
    out.push_back(make_deviation("equality.unitary_reduction", reduce_unitary_K(fam, p).max_deviation,
                                 1e-10, p));
  }
  return out;
}

Reports eq_structure(const TaskContext& c) {
  Engine rng = c.engine();
  const Index d1 = 2;
  auto blocks = structure_blocks(d1, c.d, rng);
  const Matrix u2 = random_unitary(c.d, rng);
  const auto s = rotate_structure_state(construct_structure_state(blocks, d1), u2);
  Reports out;
  for (double p : kEqualityPSamples) {
    const auto g = structure_gap(s, p);
    out.push_back(make_deviation("equality.structure_state", std::abs(g.gap), 1e-9, p));
  }
  // A_n^L != B_n^L by a 1e-2 mixture must break equality at some p.
  for (auto& blk : blocks) {
    blk.b_left = HermitianMatrix(0.99 * blk.a_left.matrix() +
                                 0.01 * random_density(blk.a_left.dim(), rng).matrix());
  }
  const auto bad = rotate_structure_state(construct_structure_state(blocks, d1), u2);
  double worst = 0.0;
  for (double p : kEqualityPSamples) worst = std::max(worst, structure_gap(bad, p).gap);
  out.push_back(witness("equality.structure_perturbed", worst, 1e-6));

  // The commutant of the algebra generated by two random elements of
  // (+) I_L (x) B(H^R) has the same block shape.
  std::vector<HermitianMatrix> gens;
  for (int g = 0; g < 2; ++g) {
    Matrix x = Matrix::Zero(c.d, c.d);
    Index off = 0;
    for (const auto& [dl, dr] : s.structure.blocks) {
      x.block(off, off, dl * dr, dl * dr) =
          kron(Matrix::Identity(dl, dl), random_hermitian(dr, rng).matrix());
      off += dl * dr;
    }
    gens.emplace_back(s.structure.basis * x * s.structure.basis.adjoint());
  }
  const auto w = wedderburn_decompose(gens, c.seed);
  auto expected = s.structure.blocks;
  auto found = w.structure.blocks;
  std::sort(expected.begin(), expected.end());
  std::sort(found.begin(), found.end());
  out.push_back(make_deviation("equality.wedderburn.blocks", expected == found ? 0.0 : 1.0, 0.5));
  out.push_back(make_deviation("equality.wedderburn.reconstruction", w.reconstruction_error, 1e-9));
  return out;
}

Reports eq_ssa_structure(const TaskContext& c) {
  Engine rng = c.engine();
  const Index d1 = 2;
  const Index d3 = 2;
  std::vector<StructureBlock> blocks;
  for (const auto& [dl, dr] : default_blocks(c.d)) {
    blocks.push_back({random_density(d1 * dl, rng), random_density(dr * d3, rng),
                      HermitianMatrix::identity(dr), std::nullopt});
  }
  const auto s = construct_ssa_structure_state(blocks, d1, d3);
  Reports out = check_commuting_factorization(s.a123, s.f_left, s.f_right, s.dims)
                    .to_reports("equality.ssa_structure.factorization");
  for (double p : kEqualityPSamples) {
    out.push_back(make_deviation("equality.ssa_structure", std::abs(ssa_gap(s.a123, s.dims, p).gap),
                                 1e-9, p));
  }
  const auto generic = random_tripartite(s.dims, rng);
  const auto gl = partial_trace(generic, s.dims[0] * s.dims[1], s.dims[2], Factor::second);
  const auto gr = partial_trace(generic, s.dims[0], s.dims[1] * s.dims[2], Factor::first);
  const auto v = check_commuting_factorization(generic, gl, gr, s.dims);
  out.push_back(witness("equality.ssa_structure.generic", v.at("product").max_deviation, 1e-6));
  return out;
}

// Projections onto a random splitting of C^d1 and two D_j built from them.
std::pair<std::vector<HermitianMatrix>, Matrix> split_projections(Index d1, Engine& rng) {
  const Matrix u = random_unitary(d1, rng);
  RealVector v1 = RealVector::Zero(d1);
  v1(0) = 1.0;
  const auto p1 = in_basis(u, v1);
  const auto p2 = in_basis(u, RealVector::Ones(d1) - v1);
  return {{p1, p2}, u};
}

Reports eq_cor_ssas(const TaskContext& c) {
  Engine rng = c.engine();
  const Index d1 = 2;
  const Index d2 = c.d;
  const auto [proj, u] = split_projections(d1, rng);
  // A = sum_i P_i (x) X_i commutes with every D_j below.
  HermitianMatrix a = HermitianMatrix::zero(d1 * d2);
  for (const auto& pi : proj) a += kron(pi, random_pd(d2, rng));
  const std::vector<HermitianMatrix> d_list{0.3 * proj[0] + 0.8 * proj[1], 0.7 * proj[0] + 0.2 * proj[1]};
  const auto fam = construct_cor_ssas_family(a, d_list, d1, d2);
  Reports out = check_cor_ssas(fam, d_list, d1, d2).to_reports("equality.cor_ssas");
  append(out, check_psi_equality(fam, d1, d2, kEqualityPSamples, &d_list).to_reports("equality.psi"));

  const std::vector<HermitianMatrix> generic{random_pd(d1 * d2, rng), random_pd(d1 * d2, rng)};
  append(out, witness_reports("equality.cor_ssas.generic",
                              check_cor_ssas(generic, d_list, d1, d2)));
  const auto pg = check_psi_equality(generic, d1, d2);
  for (const auto& ch : pg.checks) out.push_back(witness("equality.psi.generic." + ch.name, ch.max_deviation, 1e-6));
  return out;
}

Reports eq_phi(const TaskContext& c) {
  Engine rng = c.engine();
  const Matrix u = random_unitary(c.d, rng);
  std::vector<HermitianMatrix> blocks;
  for (int k = 0; k < 2; ++k) blocks.push_back(in_basis(u, uniform_vector(c.d, 0.2, 2.0, rng)));
  std::vector<HermitianMatrix> d_list;
  for (Index j = 0; j < std::max<Index>(c.config.m, 2); ++j) {
    d_list.push_back(in_basis(u, uniform_vector(c.d, 0.1, 1.0, rng)));
  }
  const auto fams = construct_phi_family(blocks, d_list);
  Reports out = check_phi_equality(fams, kEqualityPSamples, &d_list).to_reports("equality.phi");

  std::vector<std::vector<HermitianMatrix>> generic;
  for (std::size_t j = 0; j < d_list.size(); ++j) generic.push_back(pd_list(c.d, 2, rng));
  const auto v = check_phi_equality(generic);
  for (const auto& ch : v.checks) out.push_back(witness("equality.phi.generic." + ch.name, ch.max_deviation, 1e-6));
  return out;
}

std::vector<Task> plan_equality(const SuiteConfig& cfg) {
  const std::string s = "equality";
  const auto nontrivial = [](Index d) { return d >= 2; };
  std::vector<Task> out;
  auto add = [&](std::vector<Task> t) { std::move(t.begin(), t.end(), std::back_inserter(out)); };
  add(plain_tasks(cfg, s, "conditions", eq_family));
  add(plain_tasks(cfg, s, "generic", eq_generic, nontrivial));
  add(plain_tasks(cfg, s, "factorization", eq_factorization));
  add(plain_tasks(cfg, s, "sufficiency", eq_sufficiency));
  add(plain_tasks(cfg, s, "dilation", eq_dilation));
  add(plain_tasks(cfg, s, "unitary_reduction", eq_unitary));
  add(plain_tasks(cfg, s, "structure_state", eq_structure, nontrivial));
  add(plain_tasks(cfg, s, "ssa_structure", eq_ssa_structure, nontrivial));
  add(plain_tasks(cfg, s, "cor_ssas", eq_cor_ssas, nontrivial));
  add(plain_tasks(cfg, s, "phi", eq_phi, nontrivial));
  return out;
}

// ---- appendix

std::vector<SchwarzTerm> schwarz_terms(Index d, Index m, Engine& rng) {
  std::vector<SchwarzTerm> terms;
  for (Index j = 0; j < m; ++j) terms.push_back({random_pd(d, rng), random_pd(d, rng), ginibre(d, d, rng)});
  return terms;
}

Reports app_schwarz(const TaskContext& c) {
  Engine rng = c.engine();
  const double t = uniform(0.1, 3.0, rng);
  const auto res = schwarz_gap(schwarz_terms(c.d, c.config.m, rng), t, c.config.tol);
  auto r = res.report;
  r.params["t"] = t;
  return {r, make_deviation("appendix.schwarz_identity", res.identity_deviation, 1e-9)};
}

Reports app_schwarz_equality(const TaskContext& c) {
  Engine rng = c.engine();
  auto terms = schwarz_terms(c.d, c.config.m, rng);
  const Matrix t = ginibre(c.d, c.d, rng);
  for (auto& term : terms) term.x = term.a.matrix() * t;
  const auto res = schwarz_gap(terms, 0.0, c.config.tol);
  return {make_deviation("appendix.schwarz_equality", std::abs(res.report.gap), 1e-10),
          make_deviation("appendix.schwarz_identity", res.identity_deviation, 1e-9)};
}

Reports app_p2(const TaskContext& c) {
  Engine rng = c.engine();
  const auto a = pd_list(c.d, c.config.m, rng);
  std::vector<Matrix> x;
  for (Index j = 0; j < c.config.m; ++j) x.push_back(ginibre(c.d, c.d, rng));
  return {p2_convexity_gap(a, x, c.config.tol)};
}

std::vector<Task> plan_appendix(const SuiteConfig& cfg) {
  const std::string s = "appendix";
  std::vector<Task> out;
  auto add = [&](std::vector<Task> t) { std::move(t.begin(), t.end(), std::back_inserter(out)); };
  add(plain_tasks(cfg, s, "schwarz", app_schwarz));
  add(plain_tasks(cfg, s, "schwarz_equality", app_schwarz_equality));
  add(plain_tasks(cfg, s, "p2", app_p2));
  return out;
}

}  // namespace

const SuiteRegistry& SuiteRegistry::builtin() {
  static const SuiteRegistry reg = [] {
    SuiteRegistry r;
    r.add({"convexity", plan_convexity});
    r.add({"monotonicity", plan_monotonicity});
    r.add({"ssa", plan_ssa});
    r.add({"carlen-lieb", plan_carlen_lieb});
    r.add({"equality", plan_equality});
    r.add({"appendix", plan_appendix});
    return r;
  }();
  return reg;
}

}  // namespace wyd
