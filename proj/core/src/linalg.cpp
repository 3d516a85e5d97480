#include "wyd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wyd/errors.hpp"

namespace wyd {

namespace {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

HermitianMatrix::HermitianMatrix(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("HermitianMatrix: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  }
  if (!m.allFinite()) {
    throw InputError("HermitianMatrix: non-finite entries");
  }
  const double asym = max_abs(m - m.adjoint());
  if (asym > kHermitianCheckTol * std::max(1.0, max_abs(m))) {
    throw InputError("HermitianMatrix: asymmetry " + std::to_string(asym) +
                     " exceeds construction tolerance");
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::identity(Index n) {
  return HermitianMatrix(Matrix::Identity(n, n), Trusted{});
}

HermitianMatrix HermitianMatrix::zero(Index n) {
  return HermitianMatrix(Matrix::Zero(n, n), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  if (!d.allFinite()) throw InputError("HermitianMatrix::diagonal: non-finite entries");
  return HermitianMatrix(d.cast<Complex>().asDiagonal().toDenseMatrix(), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> d) {
  RealVector v(static_cast<Index>(d.size()));
  Index i = 0;
  for (double x : d) v(i++) = x;
  return diagonal(v);
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
  if (o.dim() != dim()) throw DimensionError("HermitianMatrix +=: dimension mismatch");
  m_ += o.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& o) {
  if (o.dim() != dim()) throw DimensionError("HermitianMatrix -=: dimension mismatch");
  m_ -= o.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

Matrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

double SpectralDecomposition::kernel_threshold() const {
  return wyd::kernel_threshold(eigenvalues);
}

double kernel_threshold(const RealVector& eigenvalues) {
  const double top = eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
  return kPsdTol * std::max(top, 1.0);
}

SpectralDecomposition eig_hermitian(const HermitianMatrix& a) {
  if (!a.matrix().allFinite()) throw InputError("eig_hermitian: non-finite entries");
  if (a.dim() == 0) return {RealVector(0), Matrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

PsdClass classify_psd(const HermitianMatrix& a) {
  const auto s = eig_hermitian(a);
  const double tol = s.kernel_threshold();
  const double lo = s.dim() == 0 ? 0.0 : s.eigenvalues.minCoeff();
  Definiteness kind = Definiteness::positive_definite;
  if (lo < -tol) {
    kind = Definiteness::indefinite;
  } else if (lo <= tol) {
    kind = Definiteness::positive_semidefinite;
  }
  Matrix p = Matrix::Zero(a.dim(), a.dim());
  Index rank = 0;
  for (Index i = 0; i < s.dim(); ++i) {
    if (s.eigenvalues(i) > tol) {
      p += s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
      ++rank;
    }
  }
  return {kind, lo, HermitianMatrix(p), rank};
}

bool is_psd(const HermitianMatrix& a) {
  const auto s = eig_hermitian(a);
  return s.dim() == 0 || s.eigenvalues.minCoeff() >= -s.kernel_threshold();
}

bool is_positive_definite(const HermitianMatrix& a) {
  const auto s = eig_hermitian(a);
  return s.dim() == 0 || s.eigenvalues.minCoeff() > s.kernel_threshold();
}

void require_psd(const HermitianMatrix& a, std::string_view what) {
  if (!is_psd(a)) {
    throw InputError(std::string(what) + ": matrix is not positive semidefinite");
  }
}

void require_positive_definite(const HermitianMatrix& a, std::string_view what) {
  if (!is_positive_definite(a)) {
    throw KernelError(std::string(what) + ": matrix is not positive definite");
  }
}

HermitianMatrix mat_func(const SpectralDecomposition& s, const ScalarFunction& f,
                         double kernel_value) {
  const double tol = s.kernel_threshold();
  RealVector fv(s.dim());
  for (Index i = 0; i < s.dim(); ++i) {
    const double lam = s.eigenvalues(i);
    if (lam < -tol) throw InputError("mat_func: matrix is not positive semidefinite");
    if (lam <= tol) {
      fv(i) = kernel_value;
      continue;
    }
    fv(i) = f(lam);
    if (!std::isfinite(fv(i))) {
      throw DomainError("mat_func: function undefined at eigenvalue " + std::to_string(lam));
    }
  }
  return HermitianMatrix(s.eigenvectors * fv.cast<Complex>().asDiagonal() *
                         s.eigenvectors.adjoint());
}

HermitianMatrix mat_func(const HermitianMatrix& a, const ScalarFunction& f, double kernel_value) {
  return mat_func(eig_hermitian(a), f, kernel_value);
}

Matrix mat_func_complex(const SpectralDecomposition& s, const ComplexScalarFunction& f,
                        Complex kernel_value) {
  const double tol = s.kernel_threshold();
  Eigen::VectorXcd fv(s.dim());
  for (Index i = 0; i < s.dim(); ++i) {
    const double lam = s.eigenvalues(i);
    if (lam < -tol) throw InputError("mat_func_complex: matrix is not positive semidefinite");
    fv(i) = lam <= tol ? kernel_value : f(lam);
    if (!std::isfinite(fv(i).real()) || !std::isfinite(fv(i).imag())) {
      throw DomainError("mat_func_complex: function undefined at eigenvalue " +
                        std::to_string(lam));
    }
  }
  return s.eigenvectors * fv.asDiagonal() * s.eigenvectors.adjoint();
}

HermitianMatrix hermitian_func(const HermitianMatrix& a, const ScalarFunction& f) {
  const auto s = eig_hermitian(a);
  RealVector fv = s.eigenvalues.unaryExpr([&](double x) { return f(x); });
  if (!fv.allFinite()) throw DomainError("hermitian_func: function not finite on spectrum");
  return HermitianMatrix(s.eigenvectors * fv.cast<Complex>().asDiagonal() *
                         s.eigenvectors.adjoint());
}

HermitianMatrix mat_power(const SpectralDecomposition& s, double p) {
  return mat_func(s, [p](double x) { return std::pow(x, p); }, 0.0);
}

HermitianMatrix mat_power(const HermitianMatrix& a, double p) {
  return mat_power(eig_hermitian(a), p);
}

HermitianMatrix mat_log(const SpectralDecomposition& s) {
  return mat_func(s, [](double x) { return std::log(x); }, 0.0);
}

HermitianMatrix mat_log(const HermitianMatrix& a) { return mat_log(eig_hermitian(a)); }

Matrix imaginary_power(const HermitianMatrix& a, double t) {
  return mat_func_complex(
      eig_hermitian(a), [t](double x) { return std::polar(1.0, t * std::log(x)); },
      Complex(0.0));
}

HermitianMatrix support_projection(const HermitianMatrix& b) {
  require_psd(b, "support_projection");
  return mat_func(b, [](double) { return 1.0; }, 0.0);
}

HermitianMatrix commuting_quotient(const HermitianMatrix& a, const HermitianMatrix& d) {
  if (a.dim() != d.dim()) throw DimensionError("commuting_quotient: dimension mismatch");
  require_psd(a, "commuting_quotient(A)");
  require_psd(d, "commuting_quotient(D)");
  const double scale = std::max(1.0, frobenius(a.matrix()) * frobenius(d.matrix()));
  if (frobenius(commutator(a.matrix(), d.matrix())) > 1e-8 * scale) {
    throw CommutationError("commuting_quotient: A and D do not commute");
  }
  if (!kernel_contained(d, a)) {
    throw KernelError("commuting_quotient: ker D is not contained in ker A");
  }
  const auto root = mat_power(a, 0.5);
  const auto dinv = mat_power(d, -1.0);
  return HermitianMatrix(root.matrix() * dinv.matrix() * root.matrix());
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(kron(a.matrix(), b.matrix()));
}

Matrix partial_trace(const Matrix& a12, Index d1, Index d2, Factor over) {
  if (d1 <= 0 || d2 <= 0 || a12.rows() != d1 * d2 || a12.cols() != d1 * d2) {
    throw DimensionError("partial_trace: matrix of size " + std::to_string(a12.rows()) +
                         " does not match dims " + std::to_string(d1) + "x" +
                         std::to_string(d2));
  }
  if (over == Factor::first) {
    Matrix out = Matrix::Zero(d2, d2);
    for (Index k = 0; k < d1; ++k) out += a12.block(k * d2, k * d2, d2, d2);
    return out;
  }
  Matrix out(d1, d1);
  for (Index i = 0; i < d1; ++i) {
    for (Index j = 0; j < d1; ++j) out(i, j) = a12.block(i * d2, j * d2, d2, d2).trace();
  }
  return out;
}

HermitianMatrix partial_trace(const HermitianMatrix& a12, Index d1, Index d2, Factor over) {
  return HermitianMatrix(partial_trace(a12.matrix(), d1, d2, over));
}

Matrix permute_factors(const Matrix& a, std::span<const Index> dims, std::span<const Index> perm) {
  const auto k = dims.size();
  if (perm.size() != k) throw DimensionError("permute_factors: perm/dims length mismatch");
  const Index total = std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
  if (a.rows() != total || a.cols() != total) {
    throw DimensionError("permute_factors: matrix size does not match dims");
  }
  std::vector<bool> seen(k, false);
  for (Index p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= k || seen[p]) {
      throw DimensionError("permute_factors: perm is not a permutation");
    }
    seen[p] = true;
  }
  // new_dims[m] = dims[perm[m]]; index maps old multi-index -> new multi-index.
  std::vector<Index> new_dims(k);
  for (std::size_t m = 0; m < k; ++m) new_dims[m] = dims[perm[m]];
  std::vector<Index> map(total);
  std::vector<Index> digits(k);
  for (Index idx = 0; idx < total; ++idx) {
    Index rem = idx;
    for (std::size_t f = k; f-- > 0;) {
      digits[f] = rem % dims[f];
      rem /= dims[f];
    }
    Index out = 0;
    for (std::size_t m = 0; m < k; ++m) out = out * new_dims[m] + digits[perm[m]];
    map[idx] = out;
  }
  Matrix r(total, total);
  for (Index i = 0; i < total; ++i) {
    for (Index j = 0; j < total; ++j) r(map[i], map[j]) = a(i, j);
  }
  return r;
}

HermitianMatrix permute_factors(const HermitianMatrix& a, std::span<const Index> dims,
                                std::span<const Index> perm) {
  return HermitianMatrix(permute_factors(a.matrix(), dims, perm));
}

Complex hs_inner(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw DimensionError("hs_inner: shape mismatch");
  }
  return (x.conjugate().cwiseProduct(y)).sum();
}

double frobenius(const Matrix& x) { return x.norm(); }

double operator_norm(const Matrix& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues()(0);
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const Matrix id = Matrix::Identity(u.rows(), u.cols());
  return max_abs(u.adjoint() * u - id) <= tol && max_abs(u * u.adjoint() - id) <= tol;
}

double entropy(const HermitianMatrix& a) {
  const auto s = eig_hermitian(a);
  const double tol = s.kernel_threshold();
  double out = 0.0;
  for (Index i = 0; i < s.dim(); ++i) {
    const double lam = s.eigenvalues(i);
    if (lam < -tol) throw InputError("entropy: matrix is not positive semidefinite");
    if (lam > tol) out -= lam * std::log(lam);
  }
  return out;
}

bool kernel_contained(const HermitianMatrix& b, const HermitianMatrix& a) {
  if (a.dim() != b.dim()) throw DimensionError("kernel_contained: dimension mismatch");
  const auto p = support_projection(b);
  const Matrix leak = (Matrix::Identity(a.dim(), a.dim()) - p.matrix()) * a.matrix();
  return frobenius(leak) <= 1e-8 * std::max(1.0, frobenius(a.matrix()));
}

}  // namespace wyd
