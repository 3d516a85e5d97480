#pragma once

// Dense Hermitian linear algebra with kernel/support conventions.
//
// Every matrix function goes through a full eigendecomposition; eigenvalues
// with |lambda| <= 1e-10 * max(max|lambda|, 1) are treated as kernel.

#include <complex>
#include <functional>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace wyd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative eigenvalue threshold below which an eigenvalue counts as kernel.
inline constexpr double kPsdTol = 1e-10;
/// Largest relative asymmetry accepted before symmetrization.
inline constexpr double kHermitianCheckTol = 1e-8;

/// Square complex matrix with A = A^dagger enforced at construction.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  /// Checks squareness, finiteness and asymmetry (1e-8 relative), then
  /// replaces the input by (A + A^dagger)/2.
  explicit HermitianMatrix(const Matrix& m);

  static HermitianMatrix identity(Index n);
  static HermitianMatrix zero(Index n);
  static HermitianMatrix diagonal(const RealVector& d);
  static HermitianMatrix diagonal(std::initializer_list<double> d);

  Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  HermitianMatrix& operator+=(const HermitianMatrix& o);
  HermitianMatrix& operator-=(const HermitianMatrix& o);
  HermitianMatrix& operator*=(double s);

  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
  friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }

 private:
  struct Trusted {};
  HermitianMatrix(Matrix m, Trusted) : m_(std::move(m)) {}

  Matrix m_;
};

/// Eigenvalues (ascending) and orthonormal eigenvectors stored as columns.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;

  Index dim() const noexcept { return eigenvalues.size(); }
  Matrix reconstruct() const;
  /// Absolute kernel threshold for this spectrum.
  double kernel_threshold() const;
  bool is_kernel(Index i) const { return std::abs(eigenvalues(i)) <= kernel_threshold(); }
};

enum class Definiteness { positive_definite, positive_semidefinite, indefinite };

struct PsdClass {
  Definiteness kind;
  double min_eigenvalue;
  HermitianMatrix support;  ///< projection onto (ker A)^perp
  Index rank;
};

SpectralDecomposition eig_hermitian(const HermitianMatrix& a);

/// Threshold 1e-10 * max(max|lambda|, 1) for a given spectrum.
double kernel_threshold(const RealVector& eigenvalues);

PsdClass classify_psd(const HermitianMatrix& a);
bool is_psd(const HermitianMatrix& a);
bool is_positive_definite(const HermitianMatrix& a);
/// Throws InputError naming `what` unless `a` is positive semidefinite.
void require_psd(const HermitianMatrix& a, std::string_view what);
/// Throws KernelError naming `what` unless `a` is positive definite.
void require_positive_definite(const HermitianMatrix& a, std::string_view what);

using ScalarFunction = std::function<double(double)>;
using ComplexScalarFunction = std::function<Complex(double)>;

/// V f(lambda) V^dagger for psd A; kernel eigenvalues are mapped to
/// `kernel_value`. Throws DomainError if f is not finite at a strictly
/// positive eigenvalue.
HermitianMatrix mat_func(const HermitianMatrix& a, const ScalarFunction& f, double kernel_value);
HermitianMatrix mat_func(const SpectralDecomposition& s, const ScalarFunction& f,
                         double kernel_value);

/// Complex-valued variant, e.g. imaginary powers. Returns a normal matrix.
Matrix mat_func_complex(const SpectralDecomposition& s, const ComplexScalarFunction& f,
                        Complex kernel_value);

/// f applied to every eigenvalue of an arbitrary Hermitian matrix (no kernel rule).
HermitianMatrix hermitian_func(const HermitianMatrix& a, const ScalarFunction& f);

/// A^p on the support, zero on the kernel (any real p; p = 0 is the support projection).
HermitianMatrix mat_power(const HermitianMatrix& a, double p);
HermitianMatrix mat_power(const SpectralDecomposition& s, double p);
/// log A on the support, zero on the kernel.
HermitianMatrix mat_log(const HermitianMatrix& a);
HermitianMatrix mat_log(const SpectralDecomposition& s);
/// exp(i t log A) on the support, zero on the kernel.
Matrix imaginary_power(const HermitianMatrix& a, double t);

/// Projection onto (ker B)^perp.
HermitianMatrix support_projection(const HermitianMatrix& b);

/// The limit of sqrt(A) (D + eps)^{-1} sqrt(A) for commuting psd A, D with
/// ker D inside ker A.
HermitianMatrix commuting_quotient(const HermitianMatrix& a, const HermitianMatrix& d);

Matrix kron(const Matrix& a, const Matrix& b);
HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b);

enum class Factor { first, second };

/// Partial trace of an operator on C^d1 (x) C^d2 over one factor.
Matrix partial_trace(const Matrix& a12, Index d1, Index d2, Factor over);
HermitianMatrix partial_trace(const HermitianMatrix& a12, Index d1, Index d2, Factor over);

/// Reorders tensor factors: result acts on factors perm[0], perm[1], ...
Matrix permute_factors(const Matrix& a, std::span<const Index> dims, std::span<const Index> perm);
HermitianMatrix permute_factors(const HermitianMatrix& a, std::span<const Index> dims,
                                std::span<const Index> perm);

/// Tr X^dagger Y.
Complex hs_inner(const Matrix& x, const Matrix& y);
double frobenius(const Matrix& x);
double operator_norm(const Matrix& x);
Matrix commutator(const Matrix& a, const Matrix& b);
bool is_unitary(const Matrix& u, double tol = 1e-10);

/// Von Neumann entropy S(A) = -Tr A log A, 0 log 0 = 0.
double entropy(const HermitianMatrix& a);

/// ker B inside ker A, tested as ||(I - P_B) A|| <= 1e-8 * max(1, ||A||).
bool kernel_contained(const HermitianMatrix& b, const HermitianMatrix& a);

}  // namespace wyd
