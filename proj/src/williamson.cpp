#include "kendall/williamson.hpp"

#include <cmath>
#include <sstream>

#include "kendall/quadrature.hpp"

namespace kendall {

namespace {

// G of the symmetric Pareto family with tail exponent p, transform exponent
// alpha, for t > 1. The alpha == p case is the log limit of the generic form.
double pareto_g(double p, double alpha, double t) {
  if (t <= 1.0) return 0.0;
  const double tp = std::pow(t, -p);
  if (alpha == p) return 1.0 - tp * (1.0 + p * std::log(t));
  const double ta = std::pow(t, -alpha);
  return 1.0 - tp - p / (alpha - p) * (tp - ta);
}

double pareto_g_complement(double p, double alpha, double t) {
  if (t <= 1.0) return 1.0;
  const double tp = std::pow(t, -p);
  if (alpha == p) return tp * (1.0 + p * std::log(t));
  const double ta = std::pow(t, -alpha);
  return alpha / (alpha - p) * tp - p / (alpha - p) * ta;
}

double pareto_g_derivative(double p, double alpha, double t) {
  if (t <= 1.0) return 0.0;
  if (alpha == p) return p * p * std::pow(t, -p - 1.0) * std::log(t);
  return p * alpha / (alpha - p) * (std::pow(t, -p - 1.0) - std::pow(t, -alpha - 1.0));
}

// G(t) = -1 + 2 alpha t^-alpha int_0^t x^(alpha-1) F(x) dx, the
// integration-by-parts route; the only one available for tabulated laws.
double quadrature_g(const StepDistribution& dist, double alpha, double t) {
  const auto* tab = std::get_if<TabulatedSymmetric>(&dist.family());
  const double support_top = tab ? tab->grid.back() : t;
  const double upper = std::min(t, support_top);
  const auto integrand = [&](double x) { return std::pow(x, alpha - 1.0) * dist.cdf(x); };
  double integral = integrate_or_throw(integrand, 0.0, upper, 1e-10);
  if (t > upper) {
    // F == 1 beyond the support: the remainder integrates exactly
    integral += (std::pow(t, alpha) - std::pow(upper, alpha)) / alpha;
  }
  return -1.0 + 2.0 * alpha * std::pow(t, -alpha) * integral;
}

}  // namespace

double psi(Alpha alpha, double t) {
  const double a = 1.0 - pow_pos(std::abs(t), alpha.value());
  return a > 0.0 ? a : 0.0;
}

double williamson_g(const StepDistribution& dist, Alpha alpha, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("williamson_g requires t > 0");
  const double av = alpha.value();
  return std::visit(
      [&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, SymmetricTwoPoint>) {
          return t > fam.x ? 1.0 - pow_pos(fam.x / t, av) : 0.0;
        } else if constexpr (std::is_same_v<T, SymmetricPareto>) {
          return pareto_g(fam.p, av, t);
        } else if constexpr (std::is_same_v<T, SymmetricUniform>) {
          if (t >= 1.0) return 1.0 - std::pow(t, -av) / (av + 1.0);
          return av / (av + 1.0) * t;
        } else if constexpr (std::is_same_v<T, TwoPointParetoMixture>) {
          const double two_point = t > 1.0 ? 1.0 - std::pow(t, -av) : 0.0;
          return fam.p * two_point + (1.0 - fam.p) * pareto_g(fam.p, av, t);
        } else {
          return quadrature_g(dist, av, t);
        }
      },
      dist.family());
}

double williamson_g_complement(const StepDistribution& dist, Alpha alpha, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("williamson_g_complement requires t > 0");
  const double av = alpha.value();
  return std::visit(
      [&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, SymmetricTwoPoint>) {
          return t > fam.x ? pow_pos(fam.x / t, av) : 1.0;
        } else if constexpr (std::is_same_v<T, SymmetricPareto>) {
          return pareto_g_complement(fam.p, av, t);
        } else if constexpr (std::is_same_v<T, SymmetricUniform>) {
          if (t >= 1.0) return std::pow(t, -av) / (av + 1.0);
          return 1.0 - av / (av + 1.0) * t;
        } else if constexpr (std::is_same_v<T, TwoPointParetoMixture>) {
          const double two_point = t > 1.0 ? std::pow(t, -av) : 1.0;
          return fam.p * two_point + (1.0 - fam.p) * pareto_g_complement(fam.p, av, t);
        } else {
          return 1.0 - quadrature_g(dist, av, t);
        }
      },
      dist.family());
}

bool has_analytic_g_derivative(const StepDistribution& dist) {
  return !std::holds_alternative<TabulatedSymmetric>(dist.family());
}

double williamson_g_derivative(const StepDistribution& dist, Alpha alpha, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("williamson_g_derivative requires t > 0");
  const double av = alpha.value();
  return std::visit(
      [&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, SymmetricTwoPoint>) {
          return t > fam.x ? av * pow_pos(fam.x / t, av) / t : 0.0;
        } else if constexpr (std::is_same_v<T, SymmetricPareto>) {
          return pareto_g_derivative(fam.p, av, t);
        } else if constexpr (std::is_same_v<T, SymmetricUniform>) {
          if (t >= 1.0) return av / (av + 1.0) * std::pow(t, -av - 1.0);
          return av / (av + 1.0);
        } else if constexpr (std::is_same_v<T, TwoPointParetoMixture>) {
          const double two_point = t > 1.0 ? av * std::pow(t, -av - 1.0) : 0.0;
          return fam.p * two_point + (1.0 - fam.p) * pareto_g_derivative(fam.p, av, t);
        } else {
          throw std::invalid_argument("tabulated laws have no analytic G'; use finite differences");
        }
      },
      dist.family());
}

double williamson_transform(const StepDistribution& dist, Alpha alpha, double t) {
  if (t == 0.0) return 1.0;
  return williamson_g(dist, alpha, 1.0 / std::abs(t));
}

TransformFn transform_of(const StepDistribution& dist, Alpha alpha) {
  TransformFn fn{alpha, {}, {}};
  fn.nu_hat = [dist, alpha](double t) { return williamson_transform(dist, alpha, t); };
  if (has_analytic_g_derivative(dist)) {
    fn.g_prime = [dist, alpha](double t) { return williamson_g_derivative(dist, alpha, t); };
  }
  return fn;
}

JumpDetected::JumpDetected(double t, double left, double right)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "CDF jump detected at t = " << t << ": one-sided difference quotients " << left
           << " and " << right << " disagree beyond tolerance";
        return os.str();
      }()),
      t_(t) {}

namespace {

// Central finite difference of G with the shared step policy; throws
// JumpDetected when the one-sided quotients disagree by more than 1e-3
// relative to the larger one.
double g_derivative_fd(const std::function<double(double)>& g, double t) {
  double h = 1e-5 * std::max(t, 1.0);
  if (h >= t) h = 0.5 * t;
  const double gl = g(t - h);
  const double gc = g(t);
  const double gr = g(t + h);
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

double cdf_from_transform(const TransformFn& transform, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("cdf_from_transform requires t > 0");
  const double av = transform.alpha.value();
  const double g = transform.g(t);
  const double gp = transform.g_prime ? transform.g_prime(t)
                                      : g_derivative_fd([&](double s) { return transform.g(s); }, t);
  const double f = 0.5 * (g + 1.0) + t * gp / (2.0 * av);
  return std::clamp(f, 0.0, 1.0);
}

std::vector<double> cdf_from_transform_grid(std::span<const double> t, std::span<const double> g,
                                            Alpha alpha) {
  if (t.size() != g.size() || t.size() < 2) {
    throw std::invalid_argument("grid inversion needs matching t/G columns with >= 2 rows");
  }
  const double av = alpha.value();
  const std::size_t n = t.size();
  std::vector<double> out(n, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < n; ++i) {
    if (!(t[i] > 0.0)) continue;
    if (i > 0 && !(t[i] > t[i - 1])) {
      throw std::invalid_argument("grid inversion needs strictly increasing t");
    }
    double slope;
    if (i == 0) {
      slope = (g[1] - g[0]) / (t[1] - t[0]);
    } else if (i + 1 == n) {
      slope = (g[n - 1] - g[n - 2]) / (t[n - 1] - t[n - 2]);
    } else {
      const double left = (g[i] - g[i - 1]) / (t[i] - t[i - 1]);
      const double right = (g[i + 1] - g[i]) / (t[i + 1] - t[i]);
      const double scale = std::max(std::abs(left), std::abs(right));
      if (scale > 1e-12 && std::abs(left - right) > 0.05 * scale) {
        continue;  // CDF jump: leave NaN rather than average across it
      }
      slope = (g[i + 1] - g[i - 1]) / (t[i + 1] - t[i - 1]);
    }
    out[i] = std::clamp(0.5 * (g[i] + 1.0) + t[i] * slope / (2.0 * av), 0.0, 1.0);
  }
  return out;
}

}  // namespace kendall
