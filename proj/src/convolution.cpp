#include "kendall/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kendall/williamson.hpp"

namespace kendall {

namespace {

// CDF of the symmetric Pareto law with tail exponent p.
double pareto_cdf(double p, double t) {
  if (t >= 1.0) return 1.0 - 0.5 * std::pow(t, -p);
  if (t > -1.0) return 0.5;
  return 0.5 * std::pow(-t, -p);
}

double g_derivative_or_fd(const StepDistribution& dist, Alpha alpha, double t) {
  if (has_analytic_g_derivative(dist)) return williamson_g_derivative(dist, alpha, t);
  // same finite-difference policy as the transform inversion
  const TransformFn fn = transform_of(dist, alpha);
  double h = 1e-5 * std::max(t, 1.0);
  if (h >= t) h = 0.5 * t;
  const double gl = fn.g(t - h);
  const double gc = fn.g(t);
  const double gr = fn.g(t + h);
  const double left = (gc - gl) / h;
  const double right = (gr - gc) / h;
  // a genuine CDF jump J makes a one-sided quotient blow up like J/h, so
  // tiny quotients on both sides can only be curvature noise, never a jump
  const double scale = std::max(std::abs(left), std::abs(right));
  if (scale > 1e-3 && std::abs(left - right) > 1e-3 * scale) {
    throw JumpDetected(t, left, right);
  }
  return (gr - gl) / (2.0 * h);
}

}  // namespace

PointConvolutionLaw convolve_point(double x, double y, Alpha alpha) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  const double big = std::max(ax, ay);
  const double small = std::min(ax, ay);
  // big == 0 is the point mass at 0, the convolution identity
  const double weight = big > 0.0 ? pow_pos(small / big, alpha.value()) : 0.0;
  return PointConvolutionLaw{big, weight, alpha};
}

double PointConvolutionLaw::transform(double t) const {
  if (scale == 0.0) return 1.0;
  const double p = psi(alpha, scale * t);
  return pareto_weight * p * p + (1.0 - pareto_weight) * p;
}

double PointConvolutionLaw::cdf(double t) const {
  if (scale == 0.0) return t >= 0.0 ? 1.0 : 0.0;
  double two_point;
  if (t < -scale) {
    two_point = 0.0;
  } else if (t < scale) {
    two_point = 0.5;
  } else {
    two_point = 1.0;
  }
  const double pareto = pareto_cdf(2.0 * alpha.value(), t / scale);
  return (1.0 - pareto_weight) * two_point + pareto_weight * pareto;
}

double PointConvolutionLaw::sample(RngStream& rng) const {
  if (scale == 0.0) return 0.0;
  if (rng.uniform01() < pareto_weight) {
    return scale * pareto_magnitude_from_uniform(2.0 * alpha.value(), rng.uniform_open01()) *
           rng.sign();
  }
  return scale * rng.sign();
}

double kernel_cdf_h(double x, double y, double t, Alpha alpha) {
  if (!(t > 0.0)) return 0.0;  // mass of an empty open interval
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  const double big = std::max(ax, ay);
  if (big == 0.0) return 0.0;  // point mass at 0; (0, t) excludes it
  if (big >= t) return 0.0;
  return 0.5 * (1.0 - pow_pos(ax * ay / (t * t), alpha.value()));
}

double transition_cdf(double x, const StepDistribution& dist, double t, Alpha alpha) {
  if (!(t > 0.0)) return 0.0;
  if (std::abs(x) >= t) return 0.0;
  const double px = psi(alpha, x / t);
  const double f = dist.cdf(t);
  const double g = williamson_g(dist, alpha, t);
  return px * (f - 0.5) + 0.5 * g * (1.0 - px);
}

double ConvolutionPowerLaw::cdf(double t) const { return power_cdf(*this, t); }

double power_cdf(const ConvolutionPowerLaw& law, double t) {
  if (law.n < 1) throw std::invalid_argument("convolution power needs n >= 1");
  if (law.n == 1) return law.base.cdf(t);  // keeps right-continuity at atoms
  if (t == 0.0) return 0.5;
  if (t < 0.0) return 1.0 - power_cdf(law, -t);

  const double av = law.alpha.value();
  const double g = williamson_g(law.base, law.alpha, t);
  const double gp = g_derivative_or_fd(law.base, law.alpha, t);
  const double gpow = std::pow(g, law.n - 1);
  const double f = 0.5 + 0.5 * gpow * (g + static_cast<double>(law.n) / av * t * gp);
  return std::clamp(f, 0.0, 1.0);
}

namespace {

double example_uniform_cdf(int n, double av, double t) {
  // t >= 0
  if (t < 1.0) {
    const double ratio = av / (av + 1.0);
    return 0.5 + 0.5 * std::pow(ratio, n) * std::pow(t, n) * (1.0 + n / av);
  }
  const double x = std::pow(t, -av) / (av + 1.0);
  return 0.5 + 0.5 * std::pow(1.0 - x, n - 1) * (1.0 + (n - 1) * x);
}

double example_two_point_cdf(int n, double av, double t) {
  if (t < 1.0) return 0.5;
  const double g = 1.0 - std::pow(t, -av);
  return 0.5 + 0.5 * n * std::pow(g, n - 1) - 0.5 * (n - 1) * std::pow(g, n);
}

double example_mixture_cdf(int n, double av, double p, double t) {
  if (t < 1.0) return 0.5;
  const double tp = std::pow(t, -p);
  const double ta = std::pow(t, -av);
  const double d = av - p;
  const double b1 = 1.0 - av * (1.0 - p) / d * tp + p * (1.0 - av) / d * ta;
  const double b2 = 1.0 + (1.0 - p) * (n * p - av) / d * tp - p * (1.0 - av) * (n - 1) / d * ta;
  return 0.5 + 0.5 * std::pow(b1, n - 1) * b2;
}

double example_pareto_cdf(int n, double av, double t) {
  if (t < 1.0) return 0.5;
  const double g = 1.0 - std::pow(t, -av);
  return 0.5 + n * std::pow(g, 2 * n - 1) - 0.5 * (2 * n - 1) * std::pow(g, 2 * n);
}

}  // namespace

double example_cdf(ExampleFamily family, int n, Alpha alpha, double param, double t) {
  if (n < 1) throw std::invalid_argument("example_cdf needs n >= 1");
  const double av = alpha.value();
  if (family == ExampleFamily::mixture) {
    if (!(param > 0.0) || param > 1.0) {
      throw std::invalid_argument("mixture family needs p in (0, 1]");
    }
    if (param == av) {
      throw std::invalid_argument("mixture family needs alpha != p");
    }
  }
  if (family == ExampleFamily::pareto && av > 1.0) {
    throw std::invalid_argument("pareto family closed form holds for alpha in (0, 1]");
  }
  if (n == 1) {
    // the base law itself; delegating keeps right-continuity at its atoms
    switch (family) {
      case ExampleFamily::uniform:
        return StepDistribution::uniform().cdf(t);
      case ExampleFamily::two_point:
        return StepDistribution::two_point(1.0).cdf(t);
      case ExampleFamily::mixture:
        return StepDistribution::mixture(param).cdf(t);
      case ExampleFamily::pareto:
        return StepDistribution::pareto(2.0 * av).cdf(t);
    }
  }
  if (t == 0.0) return 0.5;
  if (t < 0.0) return 1.0 - example_cdf(family, n, alpha, param, -t);

  switch (family) {
    case ExampleFamily::uniform:
      return example_uniform_cdf(n, av, t);
    case ExampleFamily::two_point:
      return example_two_point_cdf(n, av, t);
    case ExampleFamily::mixture:
      return example_mixture_cdf(n, av, param, t);
    case ExampleFamily::pareto:
      return example_pareto_cdf(n, av, t);
  }
  throw std::logic_error("unreachable");
}

double example_two_point_density(int n, Alpha alpha, double t) {
  if (n < 2) throw std::invalid_argument("two-point power density needs n >= 2");
  const double at = std::abs(t);
  if (at < 1.0) return 0.0;
  const double av = alpha.value();
  return 0.5 * av * n * (n - 1) * std::pow(at, -2.0 * av - 1.0) *
         std::pow(1.0 - std::pow(at, -av), n - 2);
}

double example_pareto_density(int n, Alpha alpha, double t) {
  if (n < 1) throw std::invalid_argument("pareto power density needs n >= 1");
  const double at = std::abs(t);
  if (at < 1.0) return 0.0;
  const double av = alpha.value();
  return av * n * (2.0 * n - 1.0) * std::pow(at, -2.0 * av - 1.0) *
         std::pow(1.0 - std::pow(at, -av), 2 * (n - 1));
}

double stable_limit_cdf(double t, Alpha alpha) {
  if (t == 0.0) return 0.5;
  if (t < 0.0) return 1.0 - stable_limit_cdf(-t, alpha);
  const double x = std::pow(t, -alpha.value());
  return 0.5 + 0.5 * (1.0 + x) * std::exp(-x);
}

}  // namespace kendall
