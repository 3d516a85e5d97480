#pragma once

// Numerical minimization of X -> J_p(K, A, X) + Tr X / p over positive
// definite X, compared with the closed-form minimizer (K^* A^p K)^{1/p}.

#include <array>

#include "wyd/gap_report.hpp"
#include "wyd/linalg.hpp"

namespace wyd {

struct OptimizerOptions {
  int max_iterations = 500;
  double fd_step = 1e-5;
  /// Early-stop target for the gradient norm.
  double gradient_tol = 1e-8;
  /// Largest gradient norm, scaled by max(1, |f|), accepted when the
  /// iteration ends at the roundoff floor of f instead of at gradient_tol.
  double accept_gradient_tol = 1e-6;
};

double upsilon_objective(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& x,
                         double p);

struct VariationalResult {
  HermitianMatrix argmin;
  HermitianMatrix closed_form;
  double objective = 0.0;
  double closed_objective = 0.0;
  int iterations = 0;
  double gradient_norm = 0.0;
  /// ||argmin - closed form|| <= 1e-5, |objective - closed objective| <= 1e-6,
  /// |Upsilon_{p,1} - (p-1)(objective + Tr K^*AK / (p(p-1)))| <= 1e-6.
  std::array<GapReport, 3> reports;
};

/// Quasi-Newton (BFGS) over X = exp(H), H Hermitian, with central
/// finite-difference gradients. Requires A positive definite, K invertible
/// and p in (1, 2). Throws NumericalError if the iteration ends with the
/// scaled gradient norm above accept_gradient_tol.
VariationalResult upsilon_variational_check(const Matrix& k, const HermitianMatrix& a, double p,
                                            const OptimizerOptions& opts = {});

}  // namespace wyd
