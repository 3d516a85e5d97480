#include "wyd/inequalities.hpp"

#include <cmath>
#include <string>

#include "wyd/errors.hpp"
#include "wyd/superop.hpp"

namespace wyd {

HermitianMatrix InstanceFamily::a_sum() const {
  HermitianMatrix s = HermitianMatrix::zero(dim());
  for (const auto& x : a) s += x;
  return s;
}

HermitianMatrix InstanceFamily::b_sum() const {
  HermitianMatrix s = HermitianMatrix::zero(dim());
  for (const auto& x : b) s += x;
  return s;
}

void InstanceFamily::validate() const {
  if (a.empty()) throw InputError("InstanceFamily: no pairs");
  if (a.size() != b.size()) throw InputError("InstanceFamily: A and B lists differ in length");
  if (k.rows() != k.cols()) throw DimensionError("InstanceFamily: K must be square");
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].dim() != dim() || b[j].dim() != dim()) {
      throw DimensionError("InstanceFamily: pair " + std::to_string(j) + " has wrong dimension");
    }
    require_psd(a[j], "InstanceFamily(A_j)");
    require_psd(b[j], "InstanceFamily(B_j)");
  }
}

bool InstanceFamily::positive_definite() const {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!is_positive_definite(a[j]) || !is_positive_definite(b[j])) return false;
  }
  return true;
}

namespace {

// Direct route where it applies, otherwise the modular double sum.
double j_auto(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& b, double p) {
  const bool definite = is_positive_definite(a) && is_positive_definite(b);
  return j_p(k, a, b, p, definite ? Route::direct : Route::modular).value;
}

double jt_auto(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& b, double p) {
  const bool definite = is_positive_definite(a) && is_positive_definite(b);
  return j_tilde_p(k, a, b, p, definite ? Route::direct : Route::modular).value;
}

double re_trace(const Matrix& m) { return m.trace().real(); }

}  // namespace

GapReport subadditivity_gap(Functional f, const InstanceFamily& fam, double p, Tolerance tol) {
  fam.validate();
  auto eval = [&](const HermitianMatrix& a, const HermitianMatrix& b) {
    return f == Functional::j_p ? j_auto(fam.k, a, b, p) : jt_auto(fam.k, a, b, p);
  };
  double parts = 0.0;
  for (std::size_t j = 0; j < fam.size(); ++j) parts += eval(fam.a[j], fam.b[j]);
  const double whole = eval(fam.a_sum(), fam.b_sum());
  auto r = make_gap(f == Functional::j_p ? "convexity.j_p" : "convexity.j_tilde_p", whole, parts,
                    p, tol);
  r.d = fam.dim();
  r.params["m"] = fam.size();
  return r;
}

LiebAndoRegime lieb_ando_regime(double p, double r) {
  if (p >= 0.0 && r >= 0.0 && p + r <= 1.0) return LiebAndoRegime::concave;
  if (1.0 < r && r <= p && p <= 2.0) return LiebAndoRegime::convex;
  throw ParameterError("lieb_ando: (p, r) = (" + std::to_string(p) + ", " + std::to_string(r) +
                       ") is in neither regime");
}

double lieb_ando_value(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& b,
                       double p, double r) {
  require_positive_definite(a, "lieb_ando(A)");
  require_positive_definite(b, "lieb_ando(B)");
  const double q = lieb_ando_regime(p, r) == LiebAndoRegime::concave ? r : 1.0 - r;
  return re_trace(k.adjoint() * mat_power(a, p).matrix() * k * mat_power(b, q).matrix());
}

GapReport lieb_ando_gap(const InstanceFamily& fam, double p, double r, Tolerance tol) {
  fam.validate();
  const auto regime = lieb_ando_regime(p, r);
  // Equal weights: the functional is homogeneous of degree p + r (or
  // p + 1 - r), not 1, so the plain sum form would not follow from concavity.
  const double w = 1.0 / static_cast<double>(fam.size());
  double parts = 0.0;
  for (std::size_t j = 0; j < fam.size(); ++j) {
    parts += w * lieb_ando_value(fam.k, fam.a[j], fam.b[j], p, r);
  }
  const double whole = lieb_ando_value(fam.k, w * fam.a_sum(), w * fam.b_sum(), p, r);
  GapReport rep = regime == LiebAndoRegime::concave
                      ? make_gap("convexity.lieb_ando_concave", parts, whole, p, tol)
                      : make_gap("convexity.lieb_ando_convex", whole, parts, p, tol);
  rep.d = fam.dim();
  rep.params["r"] = r;
  rep.params["m"] = fam.size();
  return rep;
}

double operator_jensen_gap(const JensenFunction& f, const HermitianMatrix& a1,
                           const HermitianMatrix& a2, double lambda) {
  if (a1.dim() != a2.dim()) throw DimensionError("operator_jensen_gap: dimension mismatch");
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw ParameterError("operator_jensen_gap: lambda must lie in (0, 1)");
  }
  if (f.kind == JensenFunction::Kind::power && !(f.s > 0.0 && f.s < 1.0)) {
    throw ParameterError("operator_jensen_gap: exponent must lie in (0, 1)");
  }
  require_positive_definite(a1, "operator_jensen_gap(A1)");
  require_positive_definite(a2, "operator_jensen_gap(A2)");
  auto fm = [&](const HermitianMatrix& x) {
    return f.kind == JensenFunction::Kind::log ? mat_log(x) : mat_power(x, f.s);
  };
  const HermitianMatrix mix = lambda * a1 + (1.0 - lambda) * a2;
  const HermitianMatrix diff = fm(mix) - (lambda * fm(a1) + (1.0 - lambda) * fm(a2));
  return eig_hermitian(diff).eigenvalues.minCoeff();
}

std::array<double, 3> weak_reversal(const Matrix& k12, const HermitianMatrix& a2,
                                    const HermitianMatrix& b2, Index d1, double p) {
  const Index d2 = a2.dim();
  if (b2.dim() != d2 || k12.rows() != d1 * d2 || k12.cols() != d1 * d2) {
    throw DimensionError("weak_reversal: shape mismatch");
  }
  const Matrix k2 = partial_trace(k12, d1, d2, Factor::first) / static_cast<double>(d1);
  const Matrix ap = mat_power(a2, p).matrix();
  const Matrix bq = mat_power(b2, 1.0 - p).matrix();
  const Matrix id1 = Matrix::Identity(d1, d1);
  const double t2 = re_trace(k2.adjoint() * ap * k2 * bq);
  const double t12 = re_trace(k12.adjoint() * kron(id1, ap) * k12 * kron(id1, bq));
  return {t2, t12 / static_cast<double>(d1), t12};
}

GapReport partial_trace_monotonicity_gap(const Matrix& k2, const Matrix& v1,
                                         const HermitianMatrix& a12, const HermitianMatrix& b12,
                                         Index d1, Index d2, double p, Tolerance tol) {
  if (a12.dim() != d1 * d2 || b12.dim() != d1 * d2 || k2.rows() != d2 || k2.cols() != d2 ||
      v1.rows() != d1 || v1.cols() != d1) {
    throw DimensionError("partial_trace_monotonicity_gap: shape mismatch");
  }
  if (!is_unitary(v1)) throw InputError("partial_trace_monotonicity_gap: V1 is not unitary");
  const Matrix k12 = kron(v1, k2);
  const HermitianMatrix a2 = partial_trace(a12, d1, d2, Factor::first);
  const HermitianMatrix b2 = partial_trace(b12, d1, d2, Factor::first);
  const double whole = j_auto(k12, a12, b12, p);
  const double reduced = j_auto(k2, a2, b2, p);
  auto r = make_gap("monotonicity.partial_trace", reduced, whole, p, tol);
  r.d = d1 * d2;
  r.params["dims"] = {d1, d2};

  const Matrix id1 = Matrix::Identity(d1, d1);
  const double inv = 1.0 / static_cast<double>(d1);
  auto is_lifted = [&](const HermitianMatrix& x12, const HermitianMatrix& x2) {
    return (x12.matrix() - inv * kron(id1, x2.matrix())).norm() <=
           1e-12 * std::max(1.0, x12.matrix().norm());
  };
  if (is_lifted(a12, a2) && is_lifted(b12, b2)) {
    const auto w = weak_reversal(k12, inv * a2, inv * b2, d1, p);
    r.params["weak_reversal"] = {w[0], w[1], w[2]};
  }
  return r;
}

GapReport ssa_gap(const HermitianMatrix& a123, std::array<Index, 3> dims, double p,
                  Tolerance tol) {
  const auto [d1, d2, d3] = dims;
  if (a123.dim() != d1 * d2 * d3) throw DimensionError("ssa_gap: A123 does not match dims");
  const HermitianMatrix a12 = partial_trace(a123, d1 * d2, d3, Factor::second);
  const HermitianMatrix a23 = partial_trace(a123, d1, d2 * d3, Factor::first);
  const HermitianMatrix a2 = partial_trace(a12, d1, d2, Factor::first);
  const HermitianMatrix id3 = HermitianMatrix::identity(d3);
  const double whole = j_auto(Matrix::Identity(a123.dim(), a123.dim()), a123, kron(a12, id3), p);
  const double reduced = j_auto(Matrix::Identity(d2 * d3, d2 * d3), a23, kron(a2, id3), p);
  auto r = make_gap("monotonicity.ssa", reduced, whole, p, tol);
  r.d = a123.dim();
  r.params["dims"] = {d1, d2, d3};
  if (std::abs(p - 1.0) < kLogBranchWidth) {
    const double ent = entropy(a12) + entropy(a23) - entropy(a2) - entropy(a123);
    r.params["entropy_combination"] = ent;
    r.params["entropy_deviation"] = std::abs(r.gap - ent);
  }
  return r;
}

BlockEmbedding block_embed(const InstanceFamily& fam) {
  fam.validate();
  const Index d = fam.dim();
  const Index m = static_cast<Index>(fam.size());
  Matrix a = Matrix::Zero(m * d, m * d);
  Matrix b = Matrix::Zero(m * d, m * d);
  for (Index j = 0; j < m; ++j) {
    a.block(j * d, j * d, d, d) = fam.a[static_cast<std::size_t>(j)].matrix();
    b.block(j * d, j * d, d, d) = fam.b[static_cast<std::size_t>(j)].matrix();
  }
  return {HermitianMatrix(a), HermitianMatrix(b), m, d};
}

GapReport block_additivity_check(const InstanceFamily& fam, double p) {
  const auto emb = block_embed(fam);
  const Matrix kk = kron(Matrix::Identity(emb.m, emb.m), fam.k);
  const double whole = j_auto(kk, emb.a12, emb.b12, p);
  double parts = 0.0;
  double scale = 1.0;
  for (std::size_t j = 0; j < fam.size(); ++j) {
    const double v = j_auto(fam.k, fam.a[j], fam.b[j], p);
    parts += v;
    scale += std::abs(v);
  }
  auto r = make_deviation("convexity.block_additivity", std::abs(whole - parts), 1e-10 * scale, p);
  r.d = fam.dim();
  r.params["m"] = emb.m;
  return r;
}

SchwarzResult schwarz_gap(const std::vector<SchwarzTerm>& terms, double t, Tolerance tol) {
  if (terms.empty()) throw InputError("schwarz_gap: no terms");
  if (!(t >= 0.0)) throw ParameterError("schwarz_gap: t must be nonnegative");
  const Index d = terms.front().a.dim();
  HermitianMatrix a = HermitianMatrix::zero(d);
  HermitianMatrix b = HermitianMatrix::zero(d);
  Matrix x = Matrix::Zero(d, d);
  for (const auto& term : terms) {
    if (term.a.dim() != d || term.b.dim() != d || term.x.rows() != d || term.x.cols() != d) {
      throw DimensionError("schwarz_gap: shape mismatch");
    }
    a += term.a;
    b += term.b;
    x += term.x;
  }
  const ModularData md(a, b);
  const Matrix lambda = sum_operator_power(md, 1.0, t, -1.0, x);
  const double whole = hs_inner(x, lambda).real();

  SchwarzResult out;
  double parts = 0.0;
  for (const auto& term : terms) {
    const ModularData mj(term.a, term.b);
    parts += hs_inner(term.x, sum_operator_power(mj, 1.0, t, -1.0, term.x)).real();
    const Matrix m = sum_operator_power(mj, 1.0, t, -0.5, term.x) -
                     sum_operator_power(mj, 1.0, t, 0.5, lambda);
    const double n = m.norm();
    out.residual_norms.push_back(n);
    out.residual_sum += n * n;
  }
  out.report = make_gap("appendix.schwarz", whole, parts, std::numeric_limits<double>::quiet_NaN(),
                        tol);
  out.report.d = d;
  out.report.params["t"] = t;
  out.report.params["m"] = terms.size();
  out.identity_deviation = std::abs(out.report.gap - out.residual_sum);
  out.report.params["residual_sum"] = out.residual_sum;
  out.report.params["identity_deviation"] = out.identity_deviation;
  return out;
}

GapReport p2_convexity_gap(const std::vector<HermitianMatrix>& a, const std::vector<Matrix>& x,
                           Tolerance tol) {
  if (a.empty() || a.size() != x.size()) throw InputError("p2_convexity_gap: list lengths differ");
  const Index d = a.front().dim();
  HermitianMatrix as = HermitianMatrix::zero(d);
  Matrix xs = Matrix::Zero(d, d);
  double parts = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].dim() != d || x[j].rows() != d || x[j].cols() != d) {
      throw DimensionError("p2_convexity_gap: shape mismatch");
    }
    require_positive_definite(a[j], "p2_convexity_gap");
    parts += re_trace(x[j].adjoint() * mat_power(a[j], -1.0).matrix() * x[j]);
    as += a[j];
    xs += x[j];
  }
  const Matrix ainv = mat_power(as, -1.0).matrix();
  const double whole = re_trace(xs.adjoint() * ainv * xs);
  auto r = make_gap("appendix.p2_convexity", whole, parts, 2.0, tol);
  r.d = d;
  r.params["m"] = a.size();
  const Matrix tmat = ainv * xs;
  double residual = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    residual = std::max(residual, (x[j] - a[j].matrix() * tmat).norm());
  }
  r.params["equality_residual"] = residual;
  return r;
}

}  // namespace wyd
