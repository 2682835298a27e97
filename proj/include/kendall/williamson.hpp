#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "kendall/alpha.hpp"
#include "kendall/step_distribution.hpp"

namespace kendall {

// Transform kernel Psi(t) = (1 - |t|^alpha)_+.
double psi(Alpha alpha, double t);

// Forward Williamson transform nu_hat(t) = E (1 - |Y t|^alpha)_+. Closed form
// per family where available; tabulated laws go through adaptive quadrature.
double williamson_transform(const StepDistribution& dist, Alpha alpha, double t);

// G(t) = nu_hat(1/t) for t > 0. Non-decreasing from 0 to 1.
double williamson_g(const StepDistribution& dist, Alpha alpha, double t);

// 1 - G(t), cancellation-free in the tails.
double williamson_g_complement(const StepDistribution& dist, Alpha alpha, double t);

// True when the family has a closed-form derivative G'(t).
bool has_analytic_g_derivative(const StepDistribution& dist);

// Analytic G'(t) where available (at a kink the right derivative is used);
// throws std::invalid_argument for tabulated laws.
double williamson_g_derivative(const StepDistribution& dist, Alpha alpha, double t);

// A Williamson transform as a callable pair: the transform itself plus an
// optional analytic derivative of G(t) = nu_hat(1/t). When g_prime is empty,
// consumers fall back to central finite differences.
struct TransformFn {
  Alpha alpha;
  std::function<double(double)> nu_hat;
  std::function<double(double)> g_prime;  // may be empty

  double g(double t) const { return nu_hat(1.0 / t); }
};

TransformFn transform_of(const StepDistribution& dist, Alpha alpha);

// Thrown when finite differencing straddles a jump of the target CDF: the
// one-sided difference quotients disagree beyond tolerance. The countable
// jump points are excluded from the inversion formula, so they are reported
// rather than silently averaged.
class JumpDetected : public std::runtime_error {
 public:
  JumpDetected(double t, double left, double right);
  double t() const { return t_; }

 private:
  double t_;
};

// Exact inversion: F(t) = (1/(2 alpha)) [alpha (G(t) + 1) + t G'(t)], t > 0.
// Uses the analytic derivative when the transform carries one, otherwise a
// central finite difference with step 1e-5 * max(t, 1).
double cdf_from_transform(const TransformFn& transform, double t);

// Grid inversion used on tabulated transforms (CSV route): G' is estimated
// from neighboring grid values. Rows where the one-sided slopes disagree by
// more than 5% (a CDF jump) come back as NaN.
std::vector<double> cdf_from_transform_grid(std::span<const double> t, std::span<const double> g,
                                            Alpha alpha);

}  // namespace kendall
