#include "wyd/equality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wyd/carlen_lieb.hpp"
#include "wyd/entropy.hpp"
#include "wyd/errors.hpp"
#include "wyd/superop.hpp"

namespace wyd {

bool EqualityVerdicts::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

bool EqualityVerdicts::all_fail() const {
  return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

bool EqualityVerdicts::coherent() const { return all_pass() || all_fail(); }

const ConditionCheck& EqualityVerdicts::at(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw InputError("EqualityVerdicts: no check named '" + name + "'");
}

std::vector<GapReport> EqualityVerdicts::to_reports(const std::string& prefix) const {
  std::vector<GapReport> out;
  for (const auto& c : checks) {
    out.push_back(make_deviation(prefix + "." + c.name, c.max_deviation, c.threshold));
  }
  out.push_back(make_deviation(prefix + ".coherent", coherent() ? 0.0 : 1.0, 0.5));
  return out;
}

double relative_deviation(const Matrix& x, const Matrix& y) {
  return (x - y).norm() / std::max(1.0, x.norm() + y.norm());
}

double relative_deviation(double x, double y, double scale) {
  return std::abs(x - y) / std::max(1.0, std::abs(x) + scale);
}

namespace {

ConditionCheck make_check(std::string name, double dev, double threshold) {
  return {std::move(name), dev, threshold, dev <= threshold};
}

double j_auto(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& b, double p) {
  const bool definite = is_positive_definite(a) && is_positive_definite(b);
  return j_p(k, a, b, p, definite ? Route::direct : Route::modular).value;
}

// Relative deviation of J_p additivity over a list of pairs with the same K.
double additivity_deviation(const Matrix& k, const std::vector<HermitianMatrix>& a,
                            const std::vector<HermitianMatrix>& b, const HermitianMatrix& as,
                            const HermitianMatrix& bs, double p) {
  double parts = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double v = j_auto(k, a[j], b[j], p);
    parts += v;
    scale += std::abs(v);
  }
  return relative_deviation(j_auto(k, as, bs, p), parts, scale);
}

double commutator_deviation(const Matrix& x, const Matrix& y) {
  return relative_deviation(x * y, y * x);
}

void require_nonzero(const HermitianMatrix& d, const char* who) {
  if (frobenius(d.matrix()) <= 1e-12) throw InputError(std::string(who) + ": zero D_j");
}

// Multiplies commuting Hermitian factors and returns the Hermitian product.
HermitianMatrix product(const Matrix& x, const Matrix& y) {
  const Matrix m = x * y;
  return HermitianMatrix(0.5 * (m + m.adjoint()));
}

HermitianMatrix block_diagonal_lift(const std::vector<HermitianMatrix>& blocks) {
  // sum_k A_k (x) |e_k><e_k|
  const Index d = blocks.front().dim();
  const Index m = static_cast<Index>(blocks.size());
  Matrix out = Matrix::Zero(d * m, d * m);
  for (Index k = 0; k < m; ++k) {
    Matrix e = Matrix::Zero(m, m);
    e(k, k) = 1.0;
    out += kron(blocks[static_cast<std::size_t>(k)].matrix(), e);
  }
  return HermitianMatrix(out);
}

// Relative deviation of additivity of J_p(I, X, Tr_2 X (x) I) over a list.
double conditional_additivity_deviation(const std::vector<HermitianMatrix>& x, Index d1, Index d2,
                                        double p) {
  auto value = [&](const HermitianMatrix& y) {
    const HermitianMatrix y1 = partial_trace(y, d1, d2, Factor::second);
    return j_p(Matrix::Identity(d1 * d2, d1 * d2), y,
               kron(y1, HermitianMatrix::identity(d2)), p, Route::direct)
        .value;
  };
  HermitianMatrix sum = HermitianMatrix::zero(d1 * d2);
  double parts = 0.0;
  double scale = 0.0;
  for (const auto& y : x) {
    const double v = value(y);
    parts += v;
    scale += std::abs(v);
    sum += y;
  }
  return relative_deviation(value(sum), parts, scale);
}

}  // namespace

EqualityVerdicts check_equality_conditions(const InstanceFamily& fam,
                                           std::span<const double> t_samples,
                                           std::span<const double> p_samples,
                                           std::span<const double> flow_samples) {
  fam.validate();
  if (p_samples.empty()) throw ParameterError("check_equality_conditions: no p samples");
  if (!fam.positive_definite()) {
    if (is_identity(fam.k)) return check_factorization_conditions(fam, flow_samples, p_samples[0]);
    throw KernelError("check_equality_conditions: general K needs positive definite pairs");
  }
  const HermitianMatrix a = fam.a_sum();
  const HermitianMatrix b = fam.b_sum();
  EqualityVerdicts out;

  double dev_all = 0.0;
  double dev_first = 0.0;
  for (std::size_t i = 0; i < p_samples.size(); ++i) {
    const double dev = additivity_deviation(fam.k, fam.a, fam.b, a, b, p_samples[i]);
    if (i == 0) dev_first = dev;
    dev_all = std::max(dev_all, dev);
  }
  out.checks.push_back(make_check("a_all_p", dev_all, 1e-9));
  out.checks.push_back(make_check("b_one_p", dev_first, 1e-9));

  const ModularData md(a, b);
  std::vector<ModularData> mds;
  for (std::size_t j = 0; j < fam.size(); ++j) mds.emplace_back(fam.a[j], fam.b[j]);

  double dev_c = 0.0;
  for (double t : t_samples) {
    if (!(t > 0.0)) throw ParameterError("check_equality_conditions: t samples must be positive");
    auto f = [t](double x) { return 1.0 / (x + t); };
    const Matrix whole = modular_apply(md, f, fam.k);
    for (const auto& mj : mds) dev_c = std::max(dev_c, relative_deviation(modular_apply(mj, f, fam.k), whole));
  }
  out.checks.push_back(make_check("c_resolvent", dev_c, 1e-8));

  double dev_d = 0.0;
  for (double t : flow_samples) {
    const Matrix whole = imaginary_power(a, t) * fam.k * imaginary_power(b, -t);
    for (std::size_t j = 0; j < fam.size(); ++j) {
      const Matrix part = imaginary_power(fam.a[j], t) * fam.k * imaginary_power(fam.b[j], -t);
      dev_d = std::max(dev_d, relative_deviation(part, whole));
    }
  }
  out.checks.push_back(make_check("d_flow", dev_d, 1e-8));

  double dev_e = 0.0;
  const Matrix la = mat_log(a).matrix();
  const Matrix lb = mat_log(b).matrix();
  for (std::size_t j = 0; j < fam.size(); ++j) {
    const Matrix lhs = (la - mat_log(fam.a[j]).matrix()) * fam.k;
    const Matrix rhs = fam.k * (lb - mat_log(fam.b[j]).matrix());
    dev_e = std::max(dev_e, relative_deviation(lhs, rhs));
  }
  out.checks.push_back(make_check("e_log", dev_e, 1e-8));
  return out;
}

EqualityVerdicts check_factorization_conditions(const InstanceFamily& fam,
                                                std::span<const double> flow_samples, double p) {
  fam.validate();
  if (!is_identity(fam.k)) throw InputError("check_factorization_conditions: K must be I");
  for (std::size_t j = 0; j < fam.size(); ++j) {
    if (!kernel_contained(fam.b[j], fam.a[j])) {
      throw KernelError("check_factorization_conditions: ker B_j is not contained in ker A_j");
    }
  }
  const HermitianMatrix a = fam.a_sum();
  const HermitianMatrix b = fam.b_sum();
  EqualityVerdicts out;

  double dev_c = 0.0;
  for (double t : flow_samples) {
    const Matrix whole = imaginary_power(a, t) * imaginary_power(b, -t);
    for (std::size_t j = 0; j < fam.size(); ++j) {
      const Matrix part = imaginary_power(fam.a[j], t) * imaginary_power(fam.b[j], -t);
      const Matrix proj = support_projection(fam.b[j]).matrix();
      dev_c = std::max(dev_c, relative_deviation(part, whole * proj));
    }
  }
  out.checks.push_back(make_check("c_flow", dev_c, 1e-8));
  out.checks.push_back(
      make_check("b_one_p", additivity_deviation(fam.k, fam.a, fam.b, a, b, p), 1e-9));
  return out;
}

InstanceFamily construct_equality_family(const HermitianMatrix& a, const HermitianMatrix& b,
                                         const std::vector<HermitianMatrix>& d_list) {
  if (d_list.empty()) throw InputError("construct_equality_family: empty D list");
  if (a.dim() != b.dim()) throw DimensionError("construct_equality_family: A and B differ");
  require_psd(a, "construct_equality_family(A)");
  require_psd(b, "construct_equality_family(B)");
  HermitianMatrix d = HermitianMatrix::zero(a.dim());
  for (const auto& dj : d_list) {
    if (dj.dim() != a.dim()) throw DimensionError("construct_equality_family: D_j has wrong size");
    require_psd(dj, "construct_equality_family(D_j)");
    require_nonzero(dj, "construct_equality_family");
    if (commutator_deviation(a.matrix(), dj.matrix()) > 1e-10 ||
        commutator_deviation(b.matrix(), dj.matrix()) > 1e-10) {
      throw InputError("construct_equality_family: D_j does not commute with A and B");
    }
    d += dj;
  }
  if (!kernel_contained(d, a) || !kernel_contained(d, b)) {
    throw KernelError("construct_equality_family: D is singular on the support of A or B");
  }
  const Matrix dinv = mat_power(d, -1.0).matrix();
  InstanceFamily fam{Matrix::Identity(a.dim(), a.dim()), {}, {}};
  for (const auto& dj : d_list) {
    const Matrix q = dinv * dj.matrix();
    fam.a.push_back(product(a.matrix(), q));
    fam.b.push_back(product(b.matrix(), q));
  }
  for (double p : {0.5, 1.0, 1.5}) {
    const double dev = additivity_deviation(fam.k, fam.a, fam.b, a, b, p);
    if (dev > 1e-9) {
      throw NumericalError("construct_equality_family: additivity deviation " +
                               std::to_string(dev) + " at p=" + std::to_string(p),
                           dev);
    }
  }
  return fam;
}

Matrix conditional_expectation(const SubalgebraSpec& n, const Matrix& a) {
  if (a.rows() != n.d1 * n.d2 || a.cols() != n.d1 * n.d2) {
    throw DimensionError("conditional_expectation: matrix does not match d1*d2");
  }
  if (n.factor == Factor::first) {
    return kron(partial_trace(a, n.d1, n.d2, Factor::second),
                Matrix::Identity(n.d2, n.d2) / static_cast<double>(n.d2));
  }
  return kron(Matrix::Identity(n.d1, n.d1) / static_cast<double>(n.d1),
              partial_trace(a, n.d1, n.d2, Factor::first));
}

HermitianMatrix conditional_expectation(const SubalgebraSpec& n, const HermitianMatrix& a) {
  return HermitianMatrix(conditional_expectation(n, a.matrix()));
}

Matrix petz_recovery(const SubalgebraSpec& n, const HermitianMatrix& q, const Matrix& x) {
  const Matrix e = mat_power(conditional_expectation(n, q), -0.5).matrix();
  const Matrix r = mat_power(q, 0.5).matrix();
  return r * e * x * e * r;
}

EqualityVerdicts sufficiency_check(const SubalgebraSpec& n, const std::vector<HermitianMatrix>& q,
                                   std::span<const double> flow_samples, double p) {
  if (q.empty()) throw InputError("sufficiency_check: empty list");
  const HermitianMatrix& qm = q.back();
  for (const auto& qj : q) {
    require_psd(qj, "sufficiency_check");
    if (!kernel_contained(qm, qj)) {
      throw KernelError("sufficiency_check: ker Q_m is not contained in ker Q_j");
    }
  }
  const HermitianMatrix em = conditional_expectation(n, qm);
  const Matrix pm = support_projection(qm).matrix();
  const Index dim = qm.dim();
  EqualityVerdicts out;

  double dev_i = 0.0;
  for (const auto& qj : q) {
    const Matrix rec = petz_recovery(n, qm, conditional_expectation(n, qj).matrix());
    dev_i = std::max(dev_i, relative_deviation(rec, qj.matrix()));
  }
  out.checks.push_back(make_check("i_petz_recovery", dev_i, 1e-8));

  double dev_ii = 0.0;
  for (double t : flow_samples) {
    const Matrix emt = imaginary_power(em, -t);
    const Matrix qmt = imaginary_power(qm, -t);
    for (const auto& qj : q) {
      const Matrix lhs = imaginary_power(conditional_expectation(n, qj), t) * emt * pm;
      const Matrix rhs = imaginary_power(qj, t) * qmt;
      dev_ii = std::max(dev_ii, relative_deviation(lhs, rhs));
    }
  }
  out.checks.push_back(make_check("ii_flow", dev_ii, 1e-8));

  double dev_iv = 0.0;
  const Matrix id = Matrix::Identity(dim, dim);
  for (const auto& qj : q) {
    const double full = j_p(id, qj, qm, p, Route::direct).value;
    const double reduced = j_p(id, conditional_expectation(n, qj), em, p, Route::direct).value;
    dev_iv = std::max(dev_iv, relative_deviation(full, reduced, std::abs(reduced)));
  }
  out.checks.push_back(make_check("iv_j_p", dev_iv, 1e-9));
  return out;
}

Dilation unitary_dilation(const Matrix& k) {
  if (k.rows() != k.cols()) throw DimensionError("unitary_dilation: K must be square");
  const Index d = k.rows();
  Eigen::JacobiSVD<Matrix> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector s = svd.singularValues();
  if (d > 0 && s(0) > 1.0 + 1e-12) {
    throw ContractionError("unitary_dilation: ||K|| = " + std::to_string(s(0)) + " exceeds 1");
  }
  RealVector c(d);
  for (Index i = 0; i < d; ++i) c(i) = std::sqrt(std::max(0.0, 1.0 - s(i) * s(i)));
  const Matrix l = svd.matrixU() * c.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
  Matrix u(2 * d, 2 * d);
  u << k, l, -l, k;
  Dilation out{u, (u.adjoint() * u - Matrix::Identity(2 * d, 2 * d)).cwiseAbs().maxCoeff()};
  if (out.unitarity_residual > 1e-10) {
    throw NumericalError("unitary_dilation: unitarity residual " +
                             std::to_string(out.unitarity_residual),
                         out.unitarity_residual);
  }
  return out;
}

GapReport dilation_embedding_check(const Matrix& k, const HermitianMatrix& a,
                                   const HermitianMatrix& b, double p) {
  const auto dil = unitary_dilation(k);
  const Index d = a.dim();
  Matrix ap = Matrix::Zero(2 * d, 2 * d);
  Matrix bp = Matrix::Zero(2 * d, 2 * d);
  ap.topLeftCorner(d, d) = a.matrix();
  bp.topLeftCorner(d, d) = b.matrix();
  const double lhs = j_auto(k, a, b, p);
  const double rhs = j_p(dil.unitary, HermitianMatrix(ap), HermitianMatrix(bp), p, Route::modular).value;
  auto r = make_deviation("equality.dilation", relative_deviation(lhs, rhs, std::abs(rhs)), 1e-9, p);
  r.d = d;
  r.params["unitarity_residual"] = dil.unitarity_residual;
  return r;
}

UnitaryReduction reduce_unitary_K(const InstanceFamily& fam, double p) {
  fam.validate();
  if (!is_unitary(fam.k)) throw InputError("reduce_unitary_K: K is not unitary");
  UnitaryReduction out{{Matrix::Identity(fam.dim(), fam.dim()), fam.a, {}}, 0.0};
  for (std::size_t j = 0; j < fam.size(); ++j) {
    out.family.b.emplace_back(fam.k * fam.b[j].matrix() * fam.k.adjoint());
    const double before = j_auto(fam.k, fam.a[j], fam.b[j], p);
    const double after = j_auto(out.family.k, fam.a[j], out.family.b[j], p);
    out.max_deviation =
        std::max(out.max_deviation, relative_deviation(before, after, std::abs(after)));
  }
  if (out.max_deviation > 1e-10) {
    throw NumericalError("reduce_unitary_K: values differ by " +
                             std::to_string(out.max_deviation),
                         out.max_deviation);
  }
  return out;
}

Index BlockStructure::d2() const {
  Index s = 0;
  for (const auto& [l, r] : blocks) s += l * r;
  return s;
}

namespace {

Index left_dim(const HermitianMatrix& a_left, Index d1) {
  if (d1 <= 0 || a_left.dim() % d1 != 0 || a_left.dim() == 0) {
    throw DimensionError("structure block: A^L dimension is not a multiple of d1");
  }
  return a_left.dim() / d1;
}

}  // namespace

StructureState construct_structure_state(const std::vector<StructureBlock>& blocks, Index d1) {
  if (blocks.empty()) throw InputError("construct_structure_state: no blocks");
  BlockStructure st;
  for (const auto& blk : blocks) {
    const Index dl = left_dim(blk.a_left, d1);
    const Index dr = blk.a_right.dim();
    if (dr == 0 || blk.b_right.dim() != dr) {
      throw DimensionError("construct_structure_state: A^R and B^R differ in dimension");
    }
    const HermitianMatrix bl = blk.b_left.value_or(blk.a_left);
    if (bl.dim() != blk.a_left.dim()) {
      throw DimensionError("construct_structure_state: B^L and A^L differ in dimension");
    }
    for (const auto* m : {&blk.a_left, &blk.a_right, &blk.b_right, &bl}) {
      require_psd(*m, "construct_structure_state");
    }
    st.blocks.emplace_back(dl, dr);
    st.a_left.push_back(blk.a_left);
    st.a_right.push_back(blk.a_right);
    st.b_left.push_back(bl);
    st.b_right.push_back(blk.b_right);
  }
  const Index d2 = st.d2();
  st.basis = Matrix::Identity(d2, d2);

  auto assemble = [&](const std::vector<HermitianMatrix>& left,
                      const std::vector<HermitianMatrix>& right) {
    Matrix out = Matrix::Zero(d1 * d2, d1 * d2);
    Index off = 0;
    for (std::size_t n = 0; n < st.blocks.size(); ++n) {
      const auto [dl, dr] = st.blocks[n];
      const Matrix& lm = left[n].matrix();
      const Matrix& rm = right[n].matrix();
      for (Index i = 0; i < d1; ++i) {
        for (Index l = 0; l < dl; ++l) {
          for (Index ip = 0; ip < d1; ++ip) {
            for (Index lp = 0; lp < dl; ++lp) {
              const Complex x = lm(i * dl + l, ip * dl + lp);
              for (Index r = 0; r < dr; ++r) {
                for (Index rp = 0; rp < dr; ++rp) {
                  out(i * d2 + off + l * dr + r, ip * d2 + off + lp * dr + rp) = x * rm(r, rp);
                }
              }
            }
          }
        }
      }
      off += dl * dr;
    }
    return HermitianMatrix(out);
  };

  StructureState s{assemble(st.a_left, st.a_right), assemble(st.b_left, st.b_right), st, d1, d2};
  return s;
}

StructureState rotate_structure_state(const StructureState& s, const Matrix& u2) {
  if (u2.rows() != s.d2 || !is_unitary(u2)) {
    throw InputError("rotate_structure_state: U must be a d2 x d2 unitary");
  }
  const Matrix w = kron(Matrix::Identity(s.d1, s.d1), u2);
  StructureState out = s;
  out.a12 = HermitianMatrix(w * s.a12.matrix() * w.adjoint());
  out.b12 = HermitianMatrix(w * s.b12.matrix() * w.adjoint());
  out.structure.basis = u2 * s.structure.basis;
  return out;
}

SsaStructureState construct_ssa_structure_state(const std::vector<StructureBlock>& blocks,
                                                Index d1, Index d3) {
  if (blocks.empty()) throw InputError("construct_ssa_structure_state: no blocks");
  if (d3 <= 0) throw DimensionError("construct_ssa_structure_state: d3 must be positive");
  std::vector<std::pair<Index, Index>> dims;
  Index d2 = 0;
  for (const auto& blk : blocks) {
    const Index dl = left_dim(blk.a_left, d1);
    if (blk.a_right.dim() % d3 != 0 || blk.a_right.dim() == 0) {
      throw DimensionError("construct_ssa_structure_state: A^R dimension is not a multiple of d3");
    }
    require_psd(blk.a_left, "construct_ssa_structure_state");
    require_psd(blk.a_right, "construct_ssa_structure_state");
    dims.emplace_back(dl, blk.a_right.dim() / d3);
    d2 += dl * dims.back().second;
  }
  Matrix a = Matrix::Zero(d1 * d2 * d3, d1 * d2 * d3);
  Matrix fl = Matrix::Zero(d1 * d2, d1 * d2);
  Matrix fr = Matrix::Zero(d2 * d3, d2 * d3);
  Index off = 0;
  for (std::size_t n = 0; n < blocks.size(); ++n) {
    const auto [dl, dr] = dims[n];
    const Matrix& lm = blocks[n].a_left.matrix();
    const Matrix& rm = blocks[n].a_right.matrix();
    auto k2 = [&](Index l, Index r) { return off + l * dr + r; };
    for (Index i = 0; i < d1; ++i) {
      for (Index ip = 0; ip < d1; ++ip) {
        for (Index l = 0; l < dl; ++l) {
          for (Index lp = 0; lp < dl; ++lp) {
            const Complex x = lm(i * dl + l, ip * dl + lp);
            for (Index r = 0; r < dr; ++r) {
              fl(i * d2 + k2(l, r), ip * d2 + k2(lp, r)) = x;
              for (Index rp = 0; rp < dr; ++rp) {
                for (Index t = 0; t < d3; ++t) {
                  for (Index tp = 0; tp < d3; ++tp) {
                    a((i * d2 + k2(l, r)) * d3 + t, (ip * d2 + k2(lp, rp)) * d3 + tp) =
                        x * rm(r * d3 + t, rp * d3 + tp);
                  }
                }
              }
            }
          }
        }
      }
    }
    for (Index l = 0; l < dl; ++l) {
      for (Index r = 0; r < dr; ++r) {
        for (Index rp = 0; rp < dr; ++rp) {
          for (Index t = 0; t < d3; ++t) {
            for (Index tp = 0; tp < d3; ++tp) {
              fr(k2(l, r) * d3 + t, k2(l, rp) * d3 + tp) = rm(r * d3 + t, rp * d3 + tp);
            }
          }
        }
      }
    }
    off += dl * dr;
  }
  return {HermitianMatrix(a), {d1, d2, d3}, HermitianMatrix(fl), HermitianMatrix(fr)};
}

EqualityVerdicts check_commuting_factorization(const HermitianMatrix& a123,
                                               const HermitianMatrix& f_left,
                                               const HermitianMatrix& f_right,
                                               std::array<Index, 3> dims) {
  const auto [d1, d2, d3] = dims;
  if (a123.dim() != d1 * d2 * d3 || f_left.dim() != d1 * d2 || f_right.dim() != d2 * d3) {
    throw DimensionError("check_commuting_factorization: shape mismatch");
  }
  const Matrix x = kron(f_left.matrix(), Matrix::Identity(d3, d3));
  const Matrix y = kron(Matrix::Identity(d1, d1), f_right.matrix());
  EqualityVerdicts out;
  out.checks.push_back(make_check("product", relative_deviation(a123.matrix(), x * y), 1e-10));
  out.checks.push_back(make_check("commutation", commutator_deviation(x, y), 1e-10));
  return out;
}

std::vector<HermitianMatrix> construct_cor_ssas_family(const HermitianMatrix& a,
                                                       const std::vector<HermitianMatrix>& d_list,
                                                       Index d1, Index d2) {
  if (a.dim() != d1 * d2) throw DimensionError("construct_cor_ssas_family: A does not match");
  if (d_list.empty()) throw InputError("construct_cor_ssas_family: empty D list");
  require_psd(a, "construct_cor_ssas_family(A)");
  const Matrix id2 = Matrix::Identity(d2, d2);
  HermitianMatrix d = HermitianMatrix::zero(d1);
  for (const auto& dj : d_list) {
    if (dj.dim() != d1) throw DimensionError("construct_cor_ssas_family: D_j has wrong size");
    require_psd(dj, "construct_cor_ssas_family(D_j)");
    require_nonzero(dj, "construct_cor_ssas_family");
    if (commutator_deviation(a.matrix(), kron(dj.matrix(), id2)) > 1e-10) {
      throw InputError("construct_cor_ssas_family: D_j (x) I does not commute with A");
    }
    d += dj;
  }
  if (!kernel_contained(d, partial_trace(a, d1, d2, Factor::second))) {
    throw KernelError("construct_cor_ssas_family: D is singular on the support of Tr_2 A");
  }
  const Matrix dinv = mat_power(d, -1.0).matrix();
  std::vector<HermitianMatrix> out;
  for (const auto& dj : d_list) out.push_back(product(a.matrix(), kron(dinv * dj.matrix(), id2)));
  return out;
}

EqualityVerdicts check_cor_ssas(const std::vector<HermitianMatrix>& a_list,
                                const std::vector<HermitianMatrix>& d_list, Index d1, Index d2,
                                std::span<const double> p_samples) {
  if (a_list.empty() || a_list.size() != d_list.size()) {
    throw InputError("check_cor_ssas: A and D lists must be non-empty and of equal length");
  }
  const Matrix id2 = Matrix::Identity(d2, d2);
  HermitianMatrix a = HermitianMatrix::zero(d1 * d2);
  HermitianMatrix d = HermitianMatrix::zero(d1);
  for (std::size_t j = 0; j < a_list.size(); ++j) {
    if (a_list[j].dim() != d1 * d2 || d_list[j].dim() != d1) {
      throw DimensionError("check_cor_ssas: shape mismatch");
    }
    a += a_list[j];
    d += d_list[j];
  }
  const Matrix dinv = mat_power(d, -1.0).matrix();
  double dev_comm = 0.0;
  double dev_fact = 0.0;
  for (std::size_t j = 0; j < a_list.size(); ++j) {
    const Matrix lift = kron(d_list[j].matrix(), id2);
    dev_comm = std::max(dev_comm, commutator_deviation(a_list[j].matrix(), lift));
    dev_fact = std::max(dev_fact, relative_deviation(a_list[j].matrix(),
                                                     a.matrix() * kron(dinv * d_list[j].matrix(), id2)));
  }
  double dev_add = 0.0;
  for (double p : p_samples) {
    dev_add = std::max(dev_add, conditional_additivity_deviation(a_list, d1, d2, p));
  }
  EqualityVerdicts out;
  out.checks.push_back(make_check("commutation", dev_comm, 1e-9));
  out.checks.push_back(make_check("factorization", dev_fact, 1e-9));
  out.checks.push_back(make_check("additivity", dev_add, 1e-9));
  return out;
}

std::vector<std::vector<HermitianMatrix>> construct_phi_family(
    const std::vector<HermitianMatrix>& blocks, const std::vector<HermitianMatrix>& d_list) {
  if (blocks.empty() || d_list.empty()) throw InputError("construct_phi_family: empty input");
  const Index dim = blocks.front().dim();
  HermitianMatrix d = HermitianMatrix::zero(dim);
  for (const auto& dj : d_list) {
    if (dj.dim() != dim) throw DimensionError("construct_phi_family: D_j has wrong size");
    require_psd(dj, "construct_phi_family(D_j)");
    require_nonzero(dj, "construct_phi_family");
    for (const auto& ak : blocks) {
      if (ak.dim() != dim) throw DimensionError("construct_phi_family: blocks differ in size");
      if (commutator_deviation(ak.matrix(), dj.matrix()) > 1e-10) {
        throw InputError("construct_phi_family: D_j does not commute with every block");
      }
    }
    d += dj;
  }
  const Matrix dinv = mat_power(d, -1.0).matrix();
  std::vector<std::vector<HermitianMatrix>> out;
  for (const auto& dj : d_list) {
    std::vector<HermitianMatrix> fam;
    for (const auto& ak : blocks) fam.push_back(product(ak.matrix(), dinv * dj.matrix()));
    out.push_back(std::move(fam));
  }
  return out;
}

EqualityVerdicts check_phi_equality(const std::vector<std::vector<HermitianMatrix>>& families,
                                    std::span<const double> p_samples,
                                    const std::vector<HermitianMatrix>* d_list) {
  if (families.empty() || families.front().empty()) {
    throw InputError("check_phi_equality: empty family");
  }
  const std::size_t nb = families.front().size();
  const Index dim = families.front().front().dim();
  std::vector<HermitianMatrix> sums(nb, HermitianMatrix::zero(dim));
  std::vector<HermitianMatrix> lifted;
  for (const auto& fam : families) {
    if (fam.size() != nb) throw DimensionError("check_phi_equality: block counts differ");
    for (std::size_t k = 0; k < nb; ++k) sums[k] += fam[k];
    lifted.push_back(block_diagonal_lift(fam));
  }
  double dev_hat = 0.0;
  double dev_rel = 0.0;
  for (double p : p_samples) {
    double parts = 0.0;
    double scale = 0.0;
    for (const auto& fam : families) {
      const double v = phi_hat(p, fam);
      parts += v;
      scale += std::abs(v);
    }
    dev_hat = std::max(dev_hat, relative_deviation(phi_hat(p, sums), parts, scale));
    dev_rel = std::max(dev_rel, conditional_additivity_deviation(
                                    lifted, dim, static_cast<Index>(nb), p));
  }
  EqualityVerdicts out;
  out.checks.push_back(make_check("i_relative_entropy", dev_rel, 1e-9));
  out.checks.push_back(make_check("iii_phi_hat", dev_hat, 1e-9));
  if (d_list) {
    if (d_list->size() != families.size()) {
      throw InputError("check_phi_equality: D list length differs from family count");
    }
    HermitianMatrix d = HermitianMatrix::zero(dim);
    for (const auto& dj : *d_list) d += dj;
    const Matrix dinv = mat_power(d, -1.0).matrix();
    double dev = 0.0;
    for (std::size_t j = 0; j < families.size(); ++j) {
      const Matrix& dj = (*d_list)[j].matrix();
      for (std::size_t k = 0; k < nb; ++k) {
        const Matrix& ajk = families[j][k].matrix();
        dev = std::max(dev, relative_deviation(ajk, sums[k].matrix() * dinv * dj));
        dev = std::max(dev, commutator_deviation(ajk, dj));
      }
    }
    out.checks.push_back(make_check("ii_factorization", dev, 1e-9));
  }
  return out;
}

EqualityVerdicts check_psi_equality(const std::vector<HermitianMatrix>& a_list, Index d1, Index d2,
                                    std::span<const double> p_samples,
                                    const std::vector<HermitianMatrix>* d_list) {
  if (a_list.empty()) throw InputError("check_psi_equality: empty family");
  HermitianMatrix sum = HermitianMatrix::zero(d1 * d2);
  for (const auto& a : a_list) sum += a;
  double dev_hat = 0.0;
  double dev_rel = 0.0;
  for (double p : p_samples) {
    double parts = 0.0;
    double scale = 0.0;
    for (const auto& a : a_list) {
      const double v = psi_hat(p, a, d1, d2);
      parts += v;
      scale += std::abs(v);
    }
    dev_hat = std::max(dev_hat, relative_deviation(psi_hat(p, sum, d1, d2), parts, scale));
    dev_rel = std::max(dev_rel, conditional_additivity_deviation(a_list, d1, d2, p));
  }
  EqualityVerdicts out;
  out.checks.push_back(make_check("i_relative_entropy", dev_rel, 1e-9));
  out.checks.push_back(make_check("iii_psi_hat", dev_hat, 1e-9));
  if (d_list) {
    const auto fact = check_cor_ssas(a_list, *d_list, d1, d2, {});
    double dev = std::max(fact.at("commutation").max_deviation,
                          fact.at("factorization").max_deviation);
    out.checks.push_back(make_check("ii_factorization", dev, 1e-9));
  }
  return out;
}

}  // namespace wyd
