#pragma once

#include <functional>

namespace kendall {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;       // estimated absolute error
  bool converged = false;
  int intervals = 0;
};

// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b]. The worst
// interval (largest error estimate) is bisected until the summed error
// estimate drops below abs_tol or the interval budget runs out. Kronrod
// nodes are interior points, so integrable endpoint singularities such as
// x^(alpha-1) near 0 are refined rather than evaluated at the endpoint.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol = 1e-10, int max_intervals = 4000);

// As above but throws std::runtime_error when the tolerance is not met
// within the budget.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-10, int max_intervals = 4000);

}  // namespace kendall
