#include "wyd/carlen_lieb.hpp"

#include <cmath>
#include <string>

#include "wyd/entropy.hpp"
#include "wyd/errors.hpp"
#include "wyd/pauli.hpp"

namespace wyd {

namespace {

bool near_one(double p) { return std::abs(p - 1.0) < kLogBranchWidth; }

void check_hat_range(double p, const char* who) {
  if (!(p > 0.0 && p < 2.0)) {
    throw ParameterError(std::string(who) + ": p=" + std::to_string(p) + " outside (0, 2)");
  }
}

void check_positive_p(double p, const char* who) {
  if (!(p > 0.0)) throw ParameterError(std::string(who) + ": p must be positive");
}

HermitianMatrix sandwich(const Matrix& k, const HermitianMatrix& a, double p) {
  if (k.rows() != a.dim()) throw DimensionError("upsilon: K and A differ in dimension");
  require_psd(a, "upsilon");
  return HermitianMatrix(k.adjoint() * mat_power(a, p).matrix() * k);
}

double tr_power_sum(double p, const std::vector<HermitianMatrix>& blocks) {
  if (blocks.empty()) throw InputError("phi: no blocks");
  HermitianMatrix s = HermitianMatrix::zero(blocks.front().dim());
  for (const auto& b : blocks) {
    if (b.dim() != s.dim()) throw DimensionError("phi: blocks differ in dimension");
    require_psd(b, "phi");
    s += mat_power(b, p);
  }
  return mat_power(s, 1.0 / p).trace();
}

}  // namespace

double upsilon(const Matrix& k, const HermitianMatrix& a, double p, double q) {
  check_positive_p(p, "upsilon");
  return mat_power(sandwich(k, a, p), q / p).trace();
}

HermitianMatrix upsilon_minimizer(const Matrix& k, const HermitianMatrix& a, double p) {
  check_positive_p(p, "upsilon_minimizer");
  return mat_power(sandwich(k, a, p), 1.0 / p);
}

double upsilon_hat(const Matrix& k, const HermitianMatrix& a, double p) {
  check_hat_range(p, "upsilon_hat");
  if (near_one(p)) {
    const HermitianMatrix kak = sandwich(k, a, 1.0);
    return entropy(kak) + (k * k.adjoint() * a.matrix() * mat_log(a).matrix()).trace().real();
  }
  const double linear = (k.adjoint() * a.matrix() * k).trace().real();
  return (upsilon(k, a, p, 1.0) - linear / p) / (p - 1.0);
}

double phi(double p, const std::vector<HermitianMatrix>& blocks) {
  check_positive_p(p, "phi");
  return tr_power_sum(p, blocks);
}

double phi_hat(double p, const std::vector<HermitianMatrix>& blocks) {
  check_hat_range(p, "phi_hat");
  if (blocks.empty()) throw InputError("phi_hat: no blocks");
  HermitianMatrix s = HermitianMatrix::zero(blocks.front().dim());
  for (const auto& b : blocks) {
    if (b.dim() != s.dim()) throw DimensionError("phi_hat: blocks differ in dimension");
    s += b;
  }
  if (near_one(p)) {
    double parts = 0.0;
    for (const auto& b : blocks) parts += entropy(b);
    return entropy(s) - parts;
  }
  return (tr_power_sum(p, blocks) - s.trace() / p) / (p - 1.0);
}

double psi(double p, const HermitianMatrix& a12, Index d1, Index d2) {
  check_positive_p(p, "psi");
  if (a12.dim() != d1 * d2) throw DimensionError("psi: A12 does not match d1*d2");
  require_psd(a12, "psi");
  const HermitianMatrix inner = partial_trace(mat_power(a12, p), d1, d2, Factor::second);
  return mat_power(inner, 1.0 / p).trace();
}

double psi_hat(double p, const HermitianMatrix& a12, Index d1, Index d2) {
  check_hat_range(p, "psi_hat");
  if (a12.dim() != d1 * d2) throw DimensionError("psi_hat: A12 does not match d1*d2");
  if (near_one(p)) {
    require_psd(a12, "psi_hat");
    return entropy(partial_trace(a12, d1, d2, Factor::second)) - entropy(a12);
  }
  return (psi(p, a12, d1, d2) - a12.trace() / p) / (p - 1.0);
}

GapReport psi_block_identity(const HermitianMatrix& a12, Index d1, Index d2, double p) {
  std::vector<HermitianMatrix> blocks;
  for (const auto& m : second_factor_blocks(a12.matrix(), d1, d2)) blocks.emplace_back(m);
  const double lhs = std::pow(static_cast<double>(d2), (1.0 + p) / p) * psi(p, a12, d1, d2);
  const double rhs = phi(p, blocks);
  auto r = make_deviation("carlen_lieb.psi_block", std::abs(lhs - rhs),
                          1e-9 * std::max(1.0, std::abs(lhs)), p);
  r.d = a12.dim();
  r.params["dims"] = {d1, d2};
  r.params["values"] = {lhs, rhs};
  return r;
}

GapReport upsilon_hat_subadditivity_gap(const Matrix& k, const std::vector<HermitianMatrix>& a,
                                        double p, Tolerance tol) {
  if (a.empty()) throw InputError("upsilon_hat_subadditivity_gap: empty family");
  HermitianMatrix s = HermitianMatrix::zero(a.front().dim());
  double parts = 0.0;
  for (const auto& x : a) {
    parts += upsilon_hat(k, x, p);
    s += x;
  }
  auto r = make_gap("convexity.upsilon_hat", upsilon_hat(k, s, p), parts, p, tol);
  r.d = s.dim();
  r.params["m"] = a.size();
  return r;
}

GapReport phi_hat_subadditivity_gap(const std::vector<std::vector<HermitianMatrix>>& families,
                                    double p, Tolerance tol) {
  if (families.empty()) throw InputError("phi_hat_subadditivity_gap: empty family");
  std::vector<HermitianMatrix> sum = families.front();
  double parts = 0.0;
  for (std::size_t j = 0; j < families.size(); ++j) {
    if (families[j].size() != sum.size()) {
      throw DimensionError("phi_hat_subadditivity_gap: block counts differ");
    }
    parts += phi_hat(p, families[j]);
    if (j > 0) {
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += families[j][k];
    }
  }
  auto r = make_gap("convexity.phi_hat", phi_hat(p, sum), parts, p, tol);
  r.d = sum.front().dim();
  r.params["m"] = families.size();
  r.params["blocks"] = sum.size();
  return r;
}

GapReport psi_hat_subadditivity_gap(const std::vector<HermitianMatrix>& a12, Index d1, Index d2,
                                    double p, Tolerance tol) {
  if (a12.empty()) throw InputError("psi_hat_subadditivity_gap: empty family");
  HermitianMatrix s = HermitianMatrix::zero(d1 * d2);
  double parts = 0.0;
  for (const auto& x : a12) {
    parts += psi_hat(p, x, d1, d2);
    s += x;
  }
  auto r = make_gap("convexity.psi_hat", psi_hat(p, s, d1, d2), parts, p, tol);
  r.d = d1 * d2;
  r.params["m"] = a12.size();
  r.params["dims"] = {d1, d2};
  return r;
}

std::array<GapReport, 2> psi_monotonicity_gap(const HermitianMatrix& a123,
                                              std::array<Index, 3> dims, double p,
                                              Tolerance tol) {
  check_hat_range(p, "psi_monotonicity_gap");
  const auto [d1, d2, d3] = dims;
  if (a123.dim() != d1 * d2 * d3) {
    throw DimensionError("psi_monotonicity_gap: A123 does not match dims");
  }
  const HermitianMatrix a23 = partial_trace(a123, d1, d2 * d3, Factor::first);

  auto hat = make_gap("carlen_lieb.psi_hat_mono", psi_hat(p, a23, d2, d3),
                      psi_hat(p, a123, d1 * d2, d3), p, tol);
  const double small = psi(p, a23, d2, d3);
  const double big = psi(p, a123, d1 * d2, d3);
  auto plain = p < 1.0 ? make_gap("carlen_lieb.psi_mono", big, small, p, tol)
                       : make_gap("carlen_lieb.psi_mono", small, big, p, tol);
  plain.params["signed_difference"] = big - small;
  for (auto* r : {&hat, &plain}) {
    r->d = a123.dim();
    r->params["dims"] = {d1, d2, d3};
  }
  if (near_one(p)) {
    const HermitianMatrix a12 = partial_trace(a123, d1 * d2, d3, Factor::second);
    const HermitianMatrix a2 = partial_trace(a23, d2, d3, Factor::second);
    hat.params["entropy_combination"] =
        entropy(a12) - entropy(a123) - entropy(a2) + entropy(a23);
  }
  return {hat, plain};
}

GapReport triple_minkowski_gap(const HermitianMatrix& a123, std::array<Index, 3> dims, double p,
                               Tolerance tol) {
  if (!(p > 0.0 && p <= 2.0)) {
    throw ParameterError("triple_minkowski_gap: p=" + std::to_string(p) + " outside (0, 2]");
  }
  const auto [d1, d2, d3] = dims;
  if (a123.dim() != d1 * d2 * d3) {
    throw DimensionError("triple_minkowski_gap: A123 does not match dims");
  }
  const HermitianMatrix a23 = partial_trace(a123, d1, d2 * d3, Factor::first);
  const std::array<Index, 2> dims23{d2, d3};
  const std::array<Index, 2> swap{1, 0};
  const HermitianMatrix a32 = permute_factors(a23, dims23, swap);
  const std::array<Index, 3> perm132{0, 2, 1};
  const HermitianMatrix a132 = permute_factors(a123, dims, perm132);
  const double outer = psi(p, a32, d3, d2);
  const double inner = psi(p, a132, d1 * d3, d2);
  auto r = p < 1.0 ? make_gap("carlen_lieb.triple_minkowski", inner, outer, p, tol)
                   : make_gap("carlen_lieb.triple_minkowski", outer, inner, p, tol);
  r.d = a123.dim();
  r.params["dims"] = {d1, d2, d3};
  r.params["signed_difference"] = inner - outer;
  return r;
}

}  // namespace wyd
