#pragma once

// The g-function family and the J_p functionals.
//
//   g_p(x)   = (x - x^p) / (p(1-p)),   g_1(x) = x log x,        p in (0, 2]
//   g~_p(x)  = (1 - x^p) / (p(1-p)),   g~_0(x) = -log x,        p in (-1, 1)
//   G_p(x)   = (g_p(x) + x g_p(1/x)) / 2
//
//   J_p(K,A,B)  = Tr (K sqrt B)^* g_p(Delta_{A,B}) (K sqrt B)
//   J~_p(K,A,B) = Tr (K sqrt B)^* g~_p(Delta_{A,B}) (K sqrt B)

#include <limits>
#include <string_view>

#include "wyd/linalg.hpp"

namespace wyd {

enum class GFamily { g, g_tilde, G };
enum class Route { direct, modular, quadrature };

std::string_view to_string(Route r);

/// Below this distance from the logarithmic point, p snaps to it.
inline constexpr double kLogBranchWidth = 1e-6;

double g_eval(GFamily family, double p, double x);

struct JEvaluation {
  double value = 0.0;
  Route route = Route::direct;
  double p = 0.0;
  /// Quadrature error estimate; NaN for the closed-form routes.
  double error_estimate = std::numeric_limits<double>::quiet_NaN();
};

/// J_p for p in (0, 2]. The direct route needs A, B positive definite, or
/// K = I with ker B inside ker A. The modular route accepts any psd A, B
/// (kernel check only when K = I). The quadrature route needs A, B positive
/// definite and p in (0, 2).
JEvaluation j_p(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& b, double p,
                Route route = Route::direct);

/// J~_p for p in (-1, 1). Equals J_{1-p}(K^*, B, A).
JEvaluation j_tilde_p(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& b, double p,
                      Route route = Route::direct);

/// Integral-representation route for J_p, p in (0, 2). Throws NumericalError
/// when the error estimate exceeds 1e-4.
JEvaluation j_p_quadrature(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& b,
                           double p);

/// H(A, B) = Tr A (log A - log B); requires ker B inside ker A.
double relative_entropy(const HermitianMatrix& a, const HermitianMatrix& b);

/// -1/2 Tr [K, gamma^p][K, gamma^{1-p}] for Hermitian K, p in (0, 2).
/// Nonnegative for p in (0, 1); for p > 1 gamma must be positive definite.
double wyd_skew(const Matrix& k, const HermitianMatrix& gamma, double p);

/// J_p(U, A, B) for unitary U and unit-trace A, B.
double klein_gap(const Matrix& u, const HermitianMatrix& a, const HermitianMatrix& b, double p);

/// True when K is square and equal to the identity to 1e-12.
bool is_identity(const Matrix& k);

}  // namespace wyd
