#include "wyd/superop.hpp"

#include <cmath>
#include <string>

#include "wyd/errors.hpp"

namespace wyd {

Superoperator::Superoperator(Index dim, Action action) : dim_(dim), action_(std::move(action)) {
  if (dim <= 0) throw DimensionError("Superoperator: dimension must be positive");
}

Matrix Superoperator::operator()(const Matrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) throw DimensionError("Superoperator: shape mismatch");
  return action_(x);
}

Matrix Superoperator::dense() const {
  const Index d = dim_;
  Matrix out(d * d, d * d);
  for (Index k = 0; k < d; ++k) {
    for (Index l = 0; l < d; ++l) {
      Matrix e = Matrix::Zero(d, d);
      e(k, l) = 1.0;
      const Matrix img = action_(e);
      for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) out(i * d + j, k * d + l) = img(i, j);
      }
    }
  }
  return out;
}

Superoperator Superoperator::after(const Superoperator& first) const {
  if (first.dim() != dim_) throw DimensionError("Superoperator::after: dimension mismatch");
  return Superoperator(dim_, [outer = action_, inner = first.action_](const Matrix& x) {
    return outer(inner(x));
  });
}

Superoperator mult_op(Side side, const HermitianMatrix& a) {
  Matrix m = a.matrix();
  if (side == Side::left) {
    return Superoperator(a.dim(), [m](const Matrix& x) -> Matrix { return m * x; });
  }
  return Superoperator(a.dim(), [m](const Matrix& x) -> Matrix { return x * m; });
}

double min_hs_eigenvalue(const Superoperator& s) {
  const Matrix d = s.dense();
  const Matrix h = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

ModularData::ModularData(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("ModularData: A and B differ in dimension");
  left_ = eig_hermitian(a);
  right_ = eig_hermitian(b);
  if (left_.dim() > 0 && left_.eigenvalues.minCoeff() < -left_.kernel_threshold()) {
    throw InputError("ModularData: A is not positive semidefinite");
  }
  if (right_.dim() > 0 && right_.eigenvalues.minCoeff() < -right_.kernel_threshold()) {
    throw InputError("ModularData: B is not positive semidefinite");
  }
}

bool ModularData::positive_definite() const {
  for (Index i = 0; i < dim(); ++i) {
    if (left_kernel(i) || right_kernel(i)) return false;
  }
  return true;
}

Matrix ModularData::overlaps(const Matrix& x) const {
  if (x.rows() != dim() || x.cols() != dim()) throw DimensionError("ModularData: shape mismatch");
  return left_.eigenvectors.adjoint() * x * right_.eigenvectors;
}

Matrix ModularData::from_overlaps(const Matrix& y) const {
  return left_.eigenvectors * y * right_.eigenvectors.adjoint();
}

namespace {

double overlap_floor(const Matrix& x) { return 1e-12 * std::max(1.0, x.norm()); }

}  // namespace

Matrix modular_apply(const ModularData& md, const ScalarFunction& f, const Matrix& x,
                     double at_zero) {
  Matrix c = md.overlaps(x);
  const double floor = overlap_floor(x);
  const auto& a = md.left().eigenvalues;
  const auto& b = md.right().eigenvalues;
  for (Index i = 0; i < md.dim(); ++i) {
    for (Index j = 0; j < md.dim(); ++j) {
      if (std::abs(c(i, j)) <= floor) {
        c(i, j) = 0.0;
        continue;
      }
      if (md.right_kernel(j)) {
        throw KernelError("modular_apply: X overlaps the kernel of B");
      }
      double v = 0.0;
      if (md.left_kernel(i)) {
        if (std::isnan(at_zero)) throw KernelError("modular_apply: X overlaps the kernel of A");
        v = at_zero;
      } else {
        v = f(a(i) / b(j));
      }
      if (!std::isfinite(v)) {
        throw DomainError("modular_apply: function not finite at ratio " +
                          std::to_string(a(i) / b(j)));
      }
      c(i, j) *= v;
    }
  }
  return md.from_overlaps(c);
}

Matrix modular_apply(const HermitianMatrix& a, const HermitianMatrix& b, const ScalarFunction& f,
                     const Matrix& x, double at_zero) {
  return modular_apply(ModularData(a, b), f, x, at_zero);
}

Matrix sum_operator_power(const ModularData& md, double alpha, double beta, double exponent,
                          const Matrix& x) {
  if (alpha < 0.0 || beta < 0.0) {
    throw ParameterError("sum_operator_power: coefficients must be nonnegative");
  }
  Matrix c = md.overlaps(x);
  const auto& a = md.left().eigenvalues;
  const auto& b = md.right().eigenvalues;
  for (Index i = 0; i < md.dim(); ++i) {
    const double ai = md.left_kernel(i) ? 0.0 : a(i);
    for (Index j = 0; j < md.dim(); ++j) {
      const double bj = md.right_kernel(j) ? 0.0 : b(j);
      const double lam = alpha * ai + beta * bj;
      if (lam <= 0.0) {
        if (exponent < 0.0) {
          throw KernelError("sum_operator_power: singular operator with negative exponent");
        }
        c(i, j) = exponent == 0.0 ? c(i, j) : Complex(0.0);
        continue;
      }
      c(i, j) *= std::pow(lam, exponent);
    }
  }
  return md.from_overlaps(c);
}

Matrix resolvent_apply(const ModularData& md, double t, const Matrix& x) {
  if (!(t > 0.0)) throw ParameterError("resolvent_apply: t must be positive");
  if (!md.positive_definite()) {
    throw KernelError("resolvent_apply: A and B must be positive definite");
  }
  return sum_operator_power(md, 1.0, t, -1.0, x);
}

Matrix resolvent_apply(const HermitianMatrix& a, const HermitianMatrix& b, double t,
                       const Matrix& x) {
  if (!(t > 0.0)) throw ParameterError("resolvent_apply: t must be positive");
  return resolvent_apply(ModularData(a, b), t, x);
}

}  // namespace wyd
