#include "wyd/variational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "wyd/carlen_lieb.hpp"
#include "wyd/entropy.hpp"
#include "wyd/errors.hpp"

namespace wyd {

namespace {

// Real coordinates of a Hermitian d x d matrix: the diagonal, then real and
// imaginary parts of the strict upper triangle.
Eigen::VectorXd to_coords(const Matrix& h) {
  const Index d = h.rows();
  Eigen::VectorXd v(d * d);
  Index n = 0;
  for (Index i = 0; i < d; ++i) v(n++) = h(i, i).real();
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      v(n++) = h(i, j).real();
      v(n++) = h(i, j).imag();
    }
  }
  return v;
}

HermitianMatrix from_coords(const Eigen::VectorXd& v, Index d) {
  Matrix h = Matrix::Zero(d, d);
  Index n = 0;
  for (Index i = 0; i < d; ++i) h(i, i) = v(n++);
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      h(i, j) = Complex(v(n), v(n + 1));
      h(j, i) = std::conj(h(i, j));
      n += 2;
    }
  }
  return HermitianMatrix(h);
}

HermitianMatrix exp_h(const HermitianMatrix& h) {
  return hermitian_func(h, [](double x) { return std::exp(x); });
}

}  // namespace

double upsilon_objective(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& x,
                         double p) {
  return j_p(k, a, x, p, Route::direct).value + x.trace() / p;
}

VariationalResult upsilon_variational_check(const Matrix& k, const HermitianMatrix& a, double p,
                                            const OptimizerOptions& opts) {
  if (!(p > 1.0 && p < 2.0)) {
    throw ParameterError("upsilon_variational_check: p must lie in (1, 2)");
  }
  const Index d = a.dim();
  if (k.rows() != d || k.cols() != d) {
    throw DimensionError("upsilon_variational_check: K and A differ in dimension");
  }
  require_positive_definite(a, "upsilon_variational_check(A)");
  if (std::abs(k.determinant()) < 1e-12) {
    throw InputError("upsilon_variational_check: K is not invertible");
  }

  // Trial points where exp(H) is numerically singular count as +inf.
  auto f = [&](const Eigen::VectorXd& v) {
    try {
      return upsilon_objective(k, a, exp_h(from_coords(v, d)), p);
    } catch (const KernelError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  auto grad = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd g(v.size());
    for (Index i = 0; i < v.size(); ++i) {
      Eigen::VectorXd up = v;
      Eigen::VectorXd dn = v;
      up(i) += opts.fd_step;
      dn(i) -= opts.fd_step;
      g(i) = (f(up) - f(dn)) / (2.0 * opts.fd_step);
    }
    return g;
  };

  const HermitianMatrix m(k.adjoint() * mat_power(a, p).matrix() * k);
  const double start = std::log(std::pow(m.trace() / static_cast<double>(d), 1.0 / p));
  Eigen::VectorXd x = to_coords(start * Matrix::Identity(d, d));
  double fx = f(x);
  Eigen::VectorXd g = grad(x);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(x.size(), x.size());

  int iter = 0;
  for (; iter < opts.max_iterations && g.norm() > opts.gradient_tol; ++iter) {
    Eigen::VectorXd dir = -hinv * g;
    if (dir.dot(g) >= 0.0) {
      hinv.setIdentity();
      dir = -g;
    }
    // Backtracking with a slack for roundoff in f near the minimum.
    const double slack = 1e-14 * (1.0 + std::abs(fx));
    double step = 1.0;
    Eigen::VectorXd xn;
    double fn = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      xn = x + step * dir;
      fn = f(xn);
      if (std::isfinite(fn) && fn <= fx + 1e-4 * step * dir.dot(g) + slack) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const Eigen::VectorXd gn = grad(xn);
    if (!gn.allFinite()) break;
    const Eigen::VectorXd s = xn - x;
    const Eigen::VectorXd y = gn - g;
    const double sy = s.dot(y);
    if (sy > 1e-300) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(x.size(), x.size());
      hinv = (id - rho * s * y.transpose()) * hinv * (id - rho * y * s.transpose()) +
             rho * s * s.transpose();
    }
    x = xn;
    fx = fn;
    g = gn;
  }
  if (!(g.norm() <= opts.accept_gradient_tol * std::max(1.0, std::abs(fx)))) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "upsilon_variational_check: gradient norm %.3g after %d iterations",
                  g.norm(), iter);
    throw NumericalError(msg, g.norm());
  }

  VariationalResult out;
  out.argmin = exp_h(from_coords(x, d));
  out.closed_form = upsilon_minimizer(k, a, p);
  out.objective = fx;
  out.closed_objective = upsilon_objective(k, a, out.closed_form, p);
  out.iterations = iter;
  out.gradient_norm = g.norm();
  const double linear = (k.adjoint() * a.matrix() * k).trace().real();
  const double rebuilt = (p - 1.0) * (out.closed_objective + linear / (p * (p - 1.0)));
  const double ups = upsilon(k, a, p, 1.0);
  out.reports = {
      make_deviation("variational.argmin", (out.argmin.matrix() - out.closed_form.matrix()).norm(),
                     1e-5, p),
      make_deviation("variational.objective", std::abs(out.objective - out.closed_objective), 1e-6,
                     p),
      make_deviation("variational.upsilon", std::abs(ups - rebuilt), 1e-6, p)};
  for (auto& r : out.reports) {
    r.d = d;
    r.params["iterations"] = iter;
    r.params["gradient_norm"] = out.gradient_norm;
  }
  return out;
}

}  // namespace wyd
