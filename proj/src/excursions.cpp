#include "kendall/excursions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "kendall/quadrature.hpp"
#include "kendall/williamson.hpp"

namespace kendall {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ExcursionLaw::ExcursionLaw(StepDistribution dist, Alpha alpha)
    : dist_(std::move(dist)), alpha_(alpha) {}

double ExcursionLaw::F(double t) const { return dist_.cdf(t); }
double ExcursionLaw::F_left(double t) const { return dist_.cdf_left(t); }
double ExcursionLaw::G(double t) const { return williamson_g(dist_, alpha_, t); }
double ExcursionLaw::G_complement(double t) const {
  return williamson_g_complement(dist_, alpha_, t);
}
double ExcursionLaw::G_derivative(double t) const {
  return williamson_g_derivative(dist_, alpha_, t);
}

double phi_n(const ExcursionLaw& law, int n, double t) {
  if (n < 1) throw std::invalid_argument("phi_n needs n >= 1");
  if (!(t > 0.0)) throw std::invalid_argument("phi_n requires t > 0");
  const double f = law.F(t);
  if (n == 1) return std::max(0.0, f - 0.5);
  const double g = law.G(t);
  if (g <= 0.0) return 0.0;
  const double bracket = 2.0 * n * (f - 0.5) - (n - 1) * g;
  double value;
  if (n <= 40) {
    value = std::ldexp(std::pow(g, n - 1) * bracket, -n);
  } else {
    // log space: 2^-n g^(n-1) underflows directly near n ~ 1000
    value = std::exp((n - 1) * std::log(g) - n * std::numbers::ln2) * bracket;
  }
  return std::max(0.0, value);
}

double tau_pgf(double s) {
  if (!(s >= 0.0) || s >= 2.0) throw std::invalid_argument("tau_pgf needs s in [0, 2)");
  return s / (2.0 - s);
}

double tau_pmf(int k) {
  if (k < 1) throw std::invalid_argument("tau_pmf needs k >= 1");
  return std::ldexp(1.0, -k);
}

double tau_mean() { return 2.0; }

double overshoot_cdf(const ExcursionLaw& law, double t) {
  if (!(t > 0.0)) return 0.0;
  const double f = law.F(t);
  const double g = law.G(t);
  const double denom = 2.0 - g;
  return std::clamp((4.0 * f - 2.0 - g * g) / (denom * denom), 0.0, 1.0);
}

double overshoot_cdf_left(const ExcursionLaw& law, double t) {
  if (!(t > 0.0)) return 0.0;
  const double f = law.F_left(t);
  const double g = law.G(t);
  const double denom = 2.0 - g;
  return std::clamp((4.0 * f - 2.0 - g * g) / (denom * denom), 0.0, 1.0);
}

double overshoot_survival(const ExcursionLaw& law, double t) {
  if (!(t > 0.0)) return 1.0;
  const double gc = law.G_complement(t);
  const double sf = law.dist().survival(t);
  const double denom = 1.0 + gc;
  return std::clamp((2.0 * gc * gc + 4.0 * sf) / (denom * denom), 0.0, 1.0);
}

double GeometricKendall::transform(double t) const {
  return geometric_kendall_transform(s, base, t);
}

double geometric_kendall_transform(double s, const ExcursionLaw& law, double t) {
  if (!(s >= 0.0) || s > 1.0) {
    throw std::invalid_argument("geometric-Kendall transform needs s in [0, 1]");
  }
  if (!(t > 0.0)) throw std::invalid_argument("geometric-Kendall transform requires t > 0");
  const double g = law.G(t);
  return g * (1.0 - 0.5 * s) / (1.0 - 0.5 * s * g);
}

double wiener_hopf_H(const ExcursionLaw& law, double s, double u) {
  if (!(s >= 0.0) || s > 1.0) throw std::invalid_argument("wiener_hopf_H needs s in [0, 1]");
  const double au = std::abs(u);  // Psi is even in u
  if (au == 0.0) return tau_pgf(s);
  const double x = 0.5 * s * law.G(1.0 / au);
  return x / (1.0 - x);
}

double overshoot_alpha_moment(const ExcursionLaw& law) {
  return 2.0 * law.dist().alpha_moment(law.alpha());
}

double overshoot_alpha_moment_quadrature(const ExcursionLaw& law) {
  const double av = law.alpha().value();

  // Divergence probe: local tail exponent of the survival function far out.
  const double probe = 1e6;
  const double s1 = overshoot_survival(law, probe);
  const double s2 = overshoot_survival(law, 2.0 * probe);
  if (s1 > 0.0 && s2 > 0.0) {
    const double beta = std::log(s1 / s2) / std::numbers::ln2;
    if (beta <= av + 1e-9) return kInf;
  }

  // E X^alpha = int_0^inf alpha t^(alpha-1) S(t) dt, split at a fixed point;
  // the tail is folded onto (0, 1] by t -> T/v, which keeps everything a
  // finite-interval quadrature whatever the tail exponent.
  const double split = 16.0;
  const auto body_f = [&](double t) {
    return av * std::pow(t, av - 1.0) * overshoot_survival(law, t);
  };
  const double body = integrate_or_throw(body_f, 0.0, split, 1e-11, 8000);

  const auto tail_f = [&](double v) {
    return std::pow(v, -av - 1.0) * overshoot_survival(law, split / v);
  };
  const double prefactor = av * std::pow(split, av);
  const double tail = prefactor * integrate_or_throw(tail_f, 0.0, 1.0, 1e-11, 8000);

  return body + tail;
}

}  // namespace kendall
