#pragma once

// Left/right multiplication, the relative modular operator
// Delta_{A,B} = L_A R_B^{-1}, and resolvents of L_A + t R_B.
//
// All modular actions use the spectral double sum
//   f(Delta)(X) = sum_ij f(a_i / b_j) <u_i|X|v_j> |u_i><v_j|,
// which costs O(d^3) per application.

#include <functional>
#include <limits>

#include "wyd/linalg.hpp"

namespace wyd {

enum class Side { left, right };

/// A linear map on d x d matrices.
class Superoperator {
 public:
  using Action = std::function<Matrix(const Matrix&)>;

  Superoperator(Index dim, Action action);

  Index dim() const noexcept { return dim_; }
  Matrix operator()(const Matrix& x) const;
  /// d^2 x d^2 matrix in the matrix-unit basis; column k*d + l holds the
  /// row-major vectorisation of the image of E_kl.
  Matrix dense() const;
  /// this after first, i.e. X -> this(first(X)).
  Superoperator after(const Superoperator& first) const;

 private:
  Index dim_;
  Action action_;
};

/// L_A (X -> AX) or R_A (X -> XA).
Superoperator mult_op(Side side, const HermitianMatrix& a);

/// Smallest eigenvalue of the Hilbert-Schmidt Hermitian part of a superoperator.
double min_hs_eigenvalue(const Superoperator& s);

/// Spectral data of a psd pair (A, B), reusable across t and p grids.
class ModularData {
 public:
  ModularData(const HermitianMatrix& a, const HermitianMatrix& b);

  Index dim() const noexcept { return left_.dim(); }
  const SpectralDecomposition& left() const noexcept { return left_; }
  const SpectralDecomposition& right() const noexcept { return right_; }
  bool left_kernel(Index i) const { return left_.is_kernel(i); }
  bool right_kernel(Index j) const { return right_.is_kernel(j); }
  bool positive_definite() const;

  /// <u_i|X|v_j> as a matrix.
  Matrix overlaps(const Matrix& x) const;
  /// sum_ij Y_ij |u_i><v_j|.
  Matrix from_overlaps(const Matrix& y) const;

 private:
  SpectralDecomposition left_;
  SpectralDecomposition right_;
};

/// f(Delta_{A,B})(X). `at_zero` is the value of f at ratio 0, used where
/// a_i is a kernel eigenvalue; NaN means undefined. Overlaps that meet an
/// undefined ratio throw KernelError.
Matrix modular_apply(const ModularData& md, const ScalarFunction& f, const Matrix& x,
                     double at_zero = std::numeric_limits<double>::quiet_NaN());
Matrix modular_apply(const HermitianMatrix& a, const HermitianMatrix& b, const ScalarFunction& f,
                     const Matrix& x, double at_zero = std::numeric_limits<double>::quiet_NaN());

/// Y with AY + tYB = X, for A, B positive definite and t > 0.
Matrix resolvent_apply(const ModularData& md, double t, const Matrix& x);
Matrix resolvent_apply(const HermitianMatrix& a, const HermitianMatrix& b, double t,
                       const Matrix& x);

/// (alpha L_A + beta R_B)^exponent (X) with alpha, beta >= 0. Throws
/// KernelError when a singular eigenvalue meets a negative exponent.
Matrix sum_operator_power(const ModularData& md, double alpha, double beta, double exponent,
                          const Matrix& x);

}  // namespace wyd
