#pragma once

#include <functional>

namespace wyd {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};

/// Adaptive Gauss-Legendre on [a, b]. Each panel compares the 15-point rule
/// with the sum over its two halves and bisects until the difference drops
/// below max(abs_tol, rel_tol * |panel|) or max_depth is reached. The
/// returned estimate is the sum of the final panel differences.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-13, double rel_tol = 1e-12, int max_depth = 40);

}  // namespace wyd
