#include "wyd/entropy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wyd/errors.hpp"
#include "wyd/quadrature.hpp"
#include "wyd/superop.hpp"

namespace wyd {

std::string_view to_string(Route r) {
  switch (r) {
    case Route::direct: return "direct";
    case Route::modular: return "modular";
    case Route::quadrature: return "quadrature";
  }
  return "unknown";
}

namespace {

bool near_one(double p) { return std::abs(p - 1.0) < kLogBranchWidth; }
bool near_zero(double p) { return std::abs(p) < kLogBranchWidth; }

void check_primary_range(double p, std::string_view who) {
  if (!(p > 0.0 && p <= 2.0)) {
    throw ParameterError(std::string(who) + ": p=" + std::to_string(p) + " outside (0, 2]");
  }
}

void check_dual_range(double p, std::string_view who) {
  if (!(p > -1.0 && p < 1.0)) {
    throw ParameterError(std::string(who) + ": p=" + std::to_string(p) + " outside (-1, 1)");
  }
}

double g_plain(double p, double x) {
  if (near_one(p)) return x * std::log(x);
  return (x - std::pow(x, p)) / (p * (1.0 - p));
}

double g_tilde_plain(double p, double x) {
  if (near_zero(p)) return -std::log(x);
  return (1.0 - std::pow(x, p)) / (p * (1.0 - p));
}

void check_shapes(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& b,
                  std::string_view who) {
  if (a.dim() != b.dim() || k.rows() != a.dim() || k.cols() != a.dim()) {
    throw DimensionError(std::string(who) + ": K, A, B must share one dimension");
  }
}

double real_trace(const Matrix& m, std::string_view who) {
  const Complex t = m.trace();
  const double scale = std::max(1.0, std::abs(t.real()));
  if (std::abs(t.imag()) > 1e-10 * scale * std::max<double>(1.0, static_cast<double>(m.rows()))) {
    throw NumericalError(std::string(who) + ": trace has a non-negligible imaginary part",
                         std::abs(t.imag()));
  }
  return t.real();
}

// Direct-route admissibility: positive definite pair, or K = I with
// ker B inside ker A.
void check_direct_support(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& b,
                          std::string_view who) {
  require_psd(a, who);
  require_psd(b, who);
  if (is_positive_definite(a) && is_positive_definite(b)) return;
  if (!is_identity(k)) {
    throw KernelError(std::string(who) + ": singular A or B needs K = I on the direct route");
  }
  if (!kernel_contained(b, a)) {
    throw KernelError(std::string(who) + ": ker B is not contained in ker A");
  }
}

JEvaluation j_direct(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& b,
                     double p) {
  check_direct_support(k, a, b, "j_p");
  const auto sa = eig_hermitian(a);
  const auto sb = eig_hermitian(b);
  const Matrix& am = a.matrix();
  JEvaluation out{0.0, Route::direct, p};
  if (near_one(p)) {
    const Matrix la = mat_log(sa).matrix();
    const Matrix lb = mat_log(sb).matrix();
    out.value = real_trace(k * k.adjoint() * am * la, "j_p") -
                real_trace(k.adjoint() * am * k * lb, "j_p");
    return out;
  }
  const Matrix ap = mat_power(sa, p).matrix();
  const Matrix bq = mat_power(sb, 1.0 - p).matrix();
  const double linear = real_trace(k.adjoint() * am * k, "j_p");
  const double mixed = real_trace(k.adjoint() * ap * k * bq, "j_p");
  out.value = (linear - mixed) / (p * (1.0 - p));
  return out;
}

JEvaluation j_modular(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& b,
                      double p) {
  require_psd(a, "j_p");
  require_psd(b, "j_p");
  if (is_identity(k) && !kernel_contained(b, a)) {
    throw KernelError("j_p: ker B is not contained in ker A");
  }
  const ModularData md(a, b);
  const Matrix x = k * mat_power(md.right(), 0.5).matrix();
  const Matrix y = modular_apply(md, [p](double r) { return g_plain(p, r); }, x, 0.0);
  return {real_trace(x.adjoint() * y, "j_p"), Route::modular, p};
}

}  // namespace

bool is_identity(const Matrix& k) {
  return k.rows() == k.cols() && (k - Matrix::Identity(k.rows(), k.cols())).norm() <= 1e-12;
}

double g_eval(GFamily family, double p, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("g_eval: x must be positive and finite, got " + std::to_string(x));
  }
  switch (family) {
    case GFamily::g:
      check_primary_range(p, "g_eval");
      return g_plain(p, x);
    case GFamily::g_tilde:
      check_dual_range(p, "g_eval");
      return g_tilde_plain(p, x);
    case GFamily::G:
      check_primary_range(p, "g_eval");
      return 0.5 * (g_plain(p, x) + x * g_plain(p, 1.0 / x));
  }
  throw ParameterError("g_eval: unknown family");
}

JEvaluation j_p(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& b, double p,
                Route route) {
  check_shapes(k, a, b, "j_p");
  switch (route) {
    case Route::direct:
      check_primary_range(p, "j_p");
      return j_direct(k, a, b, p);
    case Route::modular:
      check_primary_range(p, "j_p");
      return j_modular(k, a, b, p);
    case Route::quadrature:
      return j_p_quadrature(k, a, b, p);
  }
  throw ParameterError("j_p: unknown route");
}

JEvaluation j_tilde_p(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& b, double p,
                      Route route) {
  check_shapes(k, a, b, "j_tilde_p");
  check_dual_range(p, "j_tilde_p");
  if (route == Route::quadrature) {
    auto out = j_p_quadrature(k.adjoint(), b, a, 1.0 - p);
    out.p = p;
    return out;
  }
  if (route == Route::direct) {
    require_psd(a, "j_tilde_p");
    require_psd(b, "j_tilde_p");
    if (!(is_positive_definite(a) && is_positive_definite(b))) {
      throw KernelError("j_tilde_p: direct route needs positive definite A and B");
    }
    const auto sa = eig_hermitian(a);
    const auto sb = eig_hermitian(b);
    const Matrix& bm = b.matrix();
    JEvaluation out{0.0, Route::direct, p};
    if (near_zero(p)) {
      out.value = real_trace(k.adjoint() * k * bm * mat_log(sb).matrix(), "j_tilde_p") -
                  real_trace(k.adjoint() * mat_log(sa).matrix() * k * bm, "j_tilde_p");
      return out;
    }
    const double linear = real_trace(k * bm * k.adjoint(), "j_tilde_p");
    const double mixed = real_trace(
        k.adjoint() * mat_power(sa, p).matrix() * k * mat_power(sb, 1.0 - p).matrix(),
        "j_tilde_p");
    out.value = (linear - mixed) / (p * (1.0 - p));
    return out;
  }
  require_psd(a, "j_tilde_p");
  require_psd(b, "j_tilde_p");
  const ModularData md(a, b);
  const Matrix x = k * mat_power(md.right(), 0.5).matrix();
  // g~_p(0) = 1/(p(1-p)) is finite only for p in (0, 1).
  const double at_zero = (p > kLogBranchWidth && p < 1.0)
                             ? 1.0 / (p * (1.0 - p))
                             : std::numeric_limits<double>::quiet_NaN();
  const Matrix y = modular_apply(md, [p](double r) { return g_tilde_plain(p, r); }, x, at_zero);
  return {real_trace(x.adjoint() * y, "j_tilde_p"), Route::modular, p};
}

namespace {

// Weights of the quadratic forms
//   Q_aa(alpha, beta) = Re Tr (AK)^* (alpha L_A + beta R_B)^{-1} (AK)
//   Q_ab(alpha, beta) = Re Tr (AK)^* (alpha L_A + beta R_B)^{-1} (KB)
// in the joint eigenbasis: w_ij = |<u_i|K|v_j>|^2.
struct QuadForms {
  RealVector a;
  RealVector b;
  Eigen::MatrixXd w;

  double q_aa(double alpha, double beta) const {
    double s = 0.0;
    for (Index i = 0; i < a.size(); ++i) {
      for (Index j = 0; j < b.size(); ++j) s += w(i, j) * a(i) * a(i) / (alpha * a(i) + beta * b(j));
    }
    return s;
  }
  double q_ab(double alpha, double beta) const {
    double s = 0.0;
    for (Index i = 0; i < a.size(); ++i) {
      for (Index j = 0; j < b.size(); ++j) s += w(i, j) * a(i) * b(j) / (alpha * a(i) + beta * b(j));
    }
    return s;
  }
  double linear() const {
    double s = 0.0;
    for (Index i = 0; i < a.size(); ++i) {
      for (Index j = 0; j < b.size(); ++j) s += w(i, j) * a(i);
    }
    return s;
  }
};

}  // namespace

JEvaluation j_p_quadrature(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& b,
                           double p) {
  check_shapes(k, a, b, "j_p_quadrature");
  if (!(p > 0.0 && p < 2.0)) {
    throw ParameterError("j_p_quadrature: p=" + std::to_string(p) + " outside (0, 2)");
  }
  require_positive_definite(a, "j_p_quadrature(A)");
  require_positive_definite(b, "j_p_quadrature(B)");
  const ModularData md(a, b);
  QuadForms q{md.left().eigenvalues, md.right().eigenvalues,
              md.overlaps(k).cwiseAbs2()};

  QuadratureResult head;
  QuadratureResult tail;
  double value = 0.0;
  if (near_one(p)) {
    head = integrate([&](double t) { return (q.q_aa(1.0, t) - q.q_ab(1.0, t)) / (1.0 + t); }, 0.0,
                     1.0);
    tail = integrate([&](double s) { return (q.q_aa(s, 1.0) - q.q_ab(s, 1.0)) / (1.0 + s); }, 0.0,
                     1.0);
    value = head.value + tail.value;
  } else {
    // Over (0, inf) the measure is c_r t^{r-1} dt with r = p (against Q_ab)
    // or r = p - 1 (against Q_aa). Head t = s^{1/r}, tail t = u^{-1/(1-r)}.
    const bool upper = p > 1.0;
    const double r = upper ? p - 1.0 : p;
    const double c = std::sin(r * std::numbers::pi) / std::numbers::pi;
    auto form = [&](double alpha, double beta) {
      return upper ? q.q_aa(alpha, beta) : q.q_ab(alpha, beta);
    };
    head = integrate([&](double s) { return form(1.0, std::pow(s, 1.0 / r)) / r; }, 0.0, 1.0);
    tail = integrate([&](double u) { return form(std::pow(u, 1.0 / (1.0 - r)), 1.0) / (1.0 - r); },
                     0.0, 1.0);
    const double mixed = c * (head.value + tail.value);
    value = (q.linear() - mixed) / (p * (1.0 - p));
    const double scale = c / std::abs(p * (1.0 - p));
    head.error_estimate *= scale;
    tail.error_estimate *= scale;
  }
  const double err = head.error_estimate + tail.error_estimate;
  if (!(err <= 1e-4)) {
    throw NumericalError("j_p_quadrature: error estimate " + std::to_string(err) + " above 1e-4",
                         err);
  }
  return {value, Route::quadrature, p, err};
}

double relative_entropy(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("relative_entropy: dimension mismatch");
  return j_p(Matrix::Identity(a.dim(), a.dim()), a, b, 1.0, Route::direct).value;
}

double wyd_skew(const Matrix& k, const HermitianMatrix& gamma, double p) {
  if (k.rows() != k.cols() || k.rows() != gamma.dim()) {
    throw DimensionError("wyd_skew: K and gamma must share one dimension");
  }
  if ((k - k.adjoint()).cwiseAbs().maxCoeff() >
      kHermitianCheckTol * std::max(1.0, k.cwiseAbs().maxCoeff())) {
    throw InputError("wyd_skew: K is not Hermitian");
  }
  if (!(p > 0.0 && p < 2.0)) {
    throw ParameterError("wyd_skew: p=" + std::to_string(p) + " outside (0, 2)");
  }
  require_psd(gamma, "wyd_skew");
  if (p > 1.0) require_positive_definite(gamma, "wyd_skew");
  const auto s = eig_hermitian(gamma);
  const Matrix c1 = commutator(k, mat_power(s, p).matrix());
  const Matrix c2 = commutator(k, mat_power(s, 1.0 - p).matrix());
  return -0.5 * real_trace(c1 * c2, "wyd_skew");
}

double klein_gap(const Matrix& u, const HermitianMatrix& a, const HermitianMatrix& b, double p) {
  check_shapes(u, a, b, "klein_gap");
  if (!is_unitary(u)) throw InputError("klein_gap: U is not unitary");
  if (std::abs(a.trace() - 1.0) > 1e-10 || std::abs(b.trace() - 1.0) > 1e-10) {
    throw InputError("klein_gap: A and B must have unit trace");
  }
  const bool definite = is_positive_definite(a) && is_positive_definite(b);
  return j_p(u, a, b, p, definite ? Route::direct : Route::modular).value;
}

}  // namespace wyd
