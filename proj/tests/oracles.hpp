#pragma once

// Independent reference computations for the tests. Nothing here calls into
// wydlab: matrix functions go through Eigen's Schur-Pade MatrixFunctions,
// tensor bookkeeping through explicit index loops, and random instances
// through a local generator.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline Matrix herm(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

inline Matrix diag(std::initializer_list<double> v) {
  Matrix m = Matrix::Zero(static_cast<Index>(v.size()), static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

inline Matrix power(const Matrix& a, double p) { return herm(a.pow(p)); }
inline Matrix log(const Matrix& a) { return herm(a.log()); }

inline double re_trace(const Matrix& m) { return m.trace().real(); }

/// J_p through Schur-Pade powers and logs; A, B positive definite.
inline double j_p(const Matrix& k, const Matrix& a, const Matrix& b, double p) {
  if (p == 1.0) {
    return re_trace(k * k.adjoint() * a * log(a)) - re_trace(k.adjoint() * a * k * log(b));
  }
  return (re_trace(k.adjoint() * a * k) - re_trace(k.adjoint() * power(a, p) * k * power(b, 1.0 - p))) /
         (p * (1.0 - p));
}

/// Commuting closed form sum_i (a_i - a_i^p b_i^{1-p}) / (p(1-p)), and the
/// relative entropy at p = 1.
inline double j_p_diagonal(const std::vector<double>& a, const std::vector<double>& b, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (p == 1.0) {
      s += a[i] * (std::log(a[i]) - std::log(b[i]));
    } else {
      s += (a[i] - std::pow(a[i], p) * std::pow(b[i], 1.0 - p)) / (p * (1.0 - p));
    }
  }
  return s;
}

inline double entropy(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm(a));
  double s = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double x = es.eigenvalues()(i);
    if (x > 1e-300) s -= x * std::log(x);
  }
  return s;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Tr_1 (over_first = true) or Tr_2 of an operator on C^d1 (x) C^d2.
inline Matrix partial_trace(const Matrix& a, Index d1, Index d2, bool over_first) {
  if (over_first) {
    Matrix out = Matrix::Zero(d2, d2);
    for (Index i = 0; i < d1; ++i)
      for (Index k = 0; k < d2; ++k)
        for (Index l = 0; l < d2; ++l) out(k, l) += a(i * d2 + k, i * d2 + l);
    return out;
  }
  Matrix out = Matrix::Zero(d1, d1);
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d1; ++j)
      for (Index k = 0; k < d2; ++k) out(i, j) += a(i * d2 + k, j * d2 + k);
  return out;
}

/// Seeded generator for test instances.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  Matrix gaussian(Index r, Index c) {
    std::normal_distribution<double> nd;
    Matrix m(r, c);
    for (Index j = 0; j < c; ++j)
      for (Index i = 0; i < r; ++i) m(i, j) = Complex(nd(rng), nd(rng));
    return m;
  }
  Matrix hermitian(Index d) { return herm(gaussian(d, d)); }
  Matrix pd(Index d) {
    const Matrix g = gaussian(d, d);
    return herm(g * g.adjoint() / static_cast<double>(d) + 0.05 * Matrix::Identity(d, d));
  }
  Matrix density(Index d) {
    const Matrix m = pd(d);
    return m / m.trace().real();
  }
  Matrix unitary(Index d) {
    Eigen::HouseholderQR<Matrix> qr(gaussian(d, d));
    return qr.householderQ() * Matrix::Identity(d, d);
  }
  Matrix contraction(Index d) {
    const Matrix g = gaussian(d, d);
    Eigen::JacobiSVD<Matrix> svd(g);
    return 0.9 * g / svd.singularValues()(0);
  }
  /// Positive definite matrix diagonal in the given unitary basis.
  Matrix in_basis(const Matrix& u, double lo, double hi) {
    Eigen::VectorXd v(u.cols());
    for (Index i = 0; i < v.size(); ++i) v(i) = uniform(lo, hi);
    return herm(u * v.cast<Complex>().asDiagonal() * u.adjoint());
  }
};

}  // namespace oracle
