#include "wyd/quadrature.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

namespace wyd {

namespace {

using Rule = boost::math::quadrature::gauss<double, 15>;

struct Panel {
  const std::function<double(double)>& f;
  double abs_tol;
  double rel_tol;
  QuadratureResult acc;

  void run(double a, double b, double whole, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = Rule::integrate(f, a, mid);
    const double right = Rule::integrate(f, mid, b);
    const double refined = left + right;
    const double diff = std::abs(refined - whole);
    if (depth == 0 || !std::isfinite(refined) ||
        diff <= std::max(abs_tol, rel_tol * std::abs(refined))) {
      acc.value += refined;
      acc.error_estimate += diff;
      acc.panels += 2;
      return;
    }
    run(a, mid, left, depth - 1);
    run(mid, b, right, depth - 1);
  }
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, double rel_tol, int max_depth) {
  Panel panel{f, abs_tol, rel_tol, {}};
  panel.run(a, b, Rule::integrate(f, a, b), max_depth);
  if (!std::isfinite(panel.acc.value)) panel.acc.error_estimate = INFINITY;
  return panel.acc;
}

}  // namespace wyd
