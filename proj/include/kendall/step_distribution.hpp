#pragma once

#include <string>
#include <variant>
#include <vector>

#include "kendall/alpha.hpp"
#include "kendall/rng.hpp"

namespace kendall {

// Symmetric two-point law: half the mass at +x, half at -x.
struct SymmetricTwoPoint {
  double x;
};

// Symmetric Pareto law with density (p/2) |y|^(-p-1) on |y| >= 1.
struct SymmetricPareto {
  double p;
};

// Uniform law on [-1, 1].
struct SymmetricUniform {};

// p * two-point(1) + (1-p) * pareto(p), p in (0, 1].
struct TwoPointParetoMixture {
  double p;
};

// User-supplied symmetric CDF given on a positive grid; linearly interpolated
// between grid points, anchored at F(0) = 1/2, mirrored by F(-t) = 1 - F(t).
struct TabulatedSymmetric {
  std::vector<double> grid;  // strictly increasing, all > 0
  std::vector<double> cdf;   // non-decreasing, in [1/2, 1], last value 1
};

// A symmetric step law on the reals: the unit-step distribution of the walk.
// No atom at 0 is representable, so F(0) = 1/2 holds for every instance.
// Values are immutable after construction and safely shareable across
// concurrent workers.
class StepDistribution {
 public:
  using Family = std::variant<SymmetricTwoPoint, SymmetricPareto, SymmetricUniform,
                              TwoPointParetoMixture, TabulatedSymmetric>;

  static StepDistribution two_point(double x);
  static StepDistribution pareto(double p);
  static StepDistribution uniform();
  static StepDistribution mixture(double p);
  static StepDistribution tabulated(std::vector<double> grid, std::vector<double> cdf);

  // P(Y <= t), right-continuous.
  double cdf(double t) const;

  // Left limit of the CDF at t; differs from cdf(t) only at atoms.
  double cdf_left(double t) const;

  // 1 - cdf(t), computed without cancellation in the tails.
  double survival(double t) const;

  double sample(RngStream& rng) const;

  // E|Y|^a; +infinity when the integral diverges.
  double alpha_moment(Alpha a) const;

  const Family& family() const { return family_; }
  std::string describe() const;

 private:
  explicit StepDistribution(Family f) : family_(std::move(f)) {}
  Family family_;
};

// Inverse-transform magnitude of the Pareto law: u in (0, 1] -> u^(-1/p).
double pareto_magnitude_from_uniform(double p, double u);

}  // namespace kendall
