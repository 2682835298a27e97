#pragma once

#include "kendall/alpha.hpp"
#include "kendall/rng.hpp"
#include "kendall/step_distribution.hpp"

namespace kendall {

// The Kendall convolution of two point masses: a scaled mixture
// T_M( w * pareto(2 alpha) + (1 - w) * two-point(1) ) with M the larger and
// w = (m/M)^alpha the ratio of the two magnitudes raised to alpha.
// M = 0 degenerates to the point mass at 0, the convolution identity.
struct PointConvolutionLaw {
  double scale;          // M
  double pareto_weight;  // (m/M)^alpha, in [0, 1]
  Alpha alpha;

  // Williamson transform of the law at t.
  double transform(double t) const;

  // P(law <= t), right-continuous.
  double cdf(double t) const;

  double sample(RngStream& rng) const;
};

PointConvolutionLaw convolve_point(double x, double y, Alpha alpha);

// Mass the point-pair convolution puts on the open interval (0, t):
// (1/2) (1 - |x y / t^2|^alpha) on {|x| < t, |y| < t}, else 0. Strict
// inequalities and the open interval are kept exactly; the excursion
// formulas integrate this expression as written.
double kernel_cdf_h(double x, double y, double t, Alpha alpha);

// One-step transition mass of [0, t) for the walk started at x:
// [Psi(x/t)(F(t) - 1/2) + (1/2) G(t) (1 - Psi(x/t))] on {|x| < t}.
double transition_cdf(double x, const StepDistribution& dist, double t, Alpha alpha);

// n-fold Kendall convolution power of a base law.
struct ConvolutionPowerLaw {
  StepDistribution base;
  int n;
  Alpha alpha;

  double cdf(double t) const;
};

// F_n(t) = (1/(2 alpha)) [alpha (G^n + 1) + t n G^(n-1) G'] for t > 0,
// mirrored for t < 0. n = 1 falls back to the base CDF.
double power_cdf(const ConvolutionPowerLaw& law, double t);

// The four closed-form n-fold convolution families.
enum class ExampleFamily {
  uniform,    // base uniform on [-1, 1]
  two_point,  // base two-point(1)
  mixture,    // base p * two-point(1) + (1-p) * pareto(p); needs param = p
  pareto,     // base pareto(2 alpha); alpha restricted to (0, 1]
};

// Closed-form F_n for the family; param carries the mixture weight p and is
// ignored otherwise. Throws std::invalid_argument outside the stated
// parameter ranges (mixture: p in (0,1], alpha != p; pareto: alpha <= 1).
double example_cdf(ExampleFamily family, int n, Alpha alpha, double param, double t);

// Density of the n-fold power of two-point(1):
// (alpha n (n-1) / 2) |t|^(-2 alpha - 1) (1 - |t|^-alpha)^(n-2) on |t| >= 1.
double example_two_point_density(int n, Alpha alpha, double t);

// Density of the n-fold power of pareto(2 alpha):
// alpha n (2n - 1) |t|^(-2 alpha - 1) (1 - |t|^-alpha)^(2(n-1)) on |t| >= 1.
double example_pareto_density(int n, Alpha alpha, double t);

// CDF of the stable limit law sigma (transform e^{-|t|^alpha}):
// F(t) = 1/2 + (1/2)(1 + t^-alpha) e^{-t^-alpha} for t > 0, mirrored below.
double stable_limit_cdf(double t, Alpha alpha);

}  // namespace kendall
