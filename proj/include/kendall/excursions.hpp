#pragma once

#include "kendall/alpha.hpp"
#include "kendall/step_distribution.hpp"

namespace kendall {

// A step law packaged with the evaluators the excursion formulas consume:
// F, its left limits, G and 1-G. Requires F(0) = 1/2, which every
// StepDistribution satisfies by construction.
class ExcursionLaw {
 public:
  ExcursionLaw(StepDistribution dist, Alpha alpha);

  double F(double t) const;
  double F_left(double t) const;
  double G(double t) const;          // t > 0
  double G_complement(double t) const;
  double G_derivative(double t) const;

  Alpha alpha() const { return alpha_; }
  const StepDistribution& dist() const { return dist_; }

 private:
  StepDistribution dist_;
  Alpha alpha_;
};

// Phi_n(t) = P{X_1 <= 0, ..., X_{n-1} <= 0, 0 < X_n < t}
//          = 2^-n G(t)^(n-1) [2n (F(t) - 1/2) - (n-1) G(t)].
// Evaluated in log space for large n to avoid underflow.
double phi_n(const ExcursionLaw& law, int n, double t);

// E s^tau for the first strictly positive epoch: (s/2) / (1 - s/2), s in [0, 2).
double tau_pgf(double s);

// P(tau = k) = 2^-k.
double tau_pmf(int k);

// Mean of tau: derivative of the generating function at s = 1.
double tau_mean();

// Ladder-height law P{X_tau <= t} = (4F - 2 - G^2) / (2 - G)^2. With F taken
// right-continuous this is the right-continuous CDF; the _left variant uses
// the left limits of F and gives P{X_tau < t}.
double overshoot_cdf(const ExcursionLaw& law, double t);
double overshoot_cdf_left(const ExcursionLaw& law, double t);

// 1 - overshoot_cdf(t) via the complemented identity
// (2 (1-G)^2 + 4 (1-F)) / (1 + (1-G))^2, stable in the far tail.
double overshoot_survival(const ExcursionLaw& law, double t);

// The walk observed at an independent geometric time with success
// probability 1 - s/2.
struct GeometricKendall {
  double s;  // in [0, 1]
  ExcursionLaw base;

  // E Psi(Z/t) = G(t)(1 - s/2) / (1 - (s/2) G(t)).
  double transform(double t) const;
};

double geometric_kendall_transform(double s, const ExcursionLaw& law, double t);

// Joint transform of (tau, X_tau):
// H(s, u) = E s^tau Psi(u X_tau) = ((s/2) G(1/u)) / (1 - (s/2) G(1/u)).
// u = 0 is the limit E s^tau. Factorizes as
// tau_pgf(s) * geometric_kendall_transform(s, 1/u).
double wiener_hopf_H(const ExcursionLaw& law, double s, double u);

// E X_tau^alpha = 2 E|Y|^alpha; +infinity when the step moment diverges.
double overshoot_alpha_moment(const ExcursionLaw& law);

// Companion cross-check: integrates t^alpha against the ladder-height CDF by
// adaptive quadrature, closing the far tail analytically from its measured
// power-law exponent.
double overshoot_alpha_moment_quadrature(const ExcursionLaw& law);

}  // namespace kendall
