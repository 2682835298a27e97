#include "kendall/step_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "kendall/quadrature.hpp"

namespace kendall {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  // xs strictly increasing with implicit anchor (0, 1/2); x in [0, xs.back()]
  if (x <= 0.0) return 0.5;
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.end()) return 1.0;
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const double x1 = xs[hi];
  const double y1 = ys[hi];
  const double x0 = hi == 0 ? 0.0 : xs[hi - 1];
  const double y0 = hi == 0 ? 0.5 : ys[hi - 1];
  const double w = (x - x0) / (x1 - x0);
  return y0 + w * (y1 - y0);
}

double tabulated_positive_cdf(const TabulatedSymmetric& tab, double t) {
  if (t >= tab.grid.back()) return 1.0;
  return interp(tab.grid, tab.cdf, t);
}

// Inverse of H(t) = 2 F(t) - 1 = P(|Y| <= t) on the tabulated grid.
double tabulated_magnitude(const TabulatedSymmetric& tab, double h) {
  const auto half_cdf = [&](std::size_t i) { return 2.0 * tab.cdf[i] - 1.0; };
  if (h <= 0.0) return 0.0;
  std::size_t lo = 0;
  std::size_t hi = tab.grid.size();
  while (lo < hi) {  // first index with half-CDF >= h
    const std::size_t mid = (lo + hi) / 2;
    if (half_cdf(mid) < h) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == tab.grid.size()) return tab.grid.back();
  const double x1 = tab.grid[lo];
  const double y1 = half_cdf(lo);
  const double x0 = lo == 0 ? 0.0 : tab.grid[lo - 1];
  const double y0 = lo == 0 ? 0.0 : half_cdf(lo - 1);
  if (y1 == y0) return x1;
  return x0 + (h - y0) / (y1 - y0) * (x1 - x0);
}

}  // namespace

StepDistribution StepDistribution::two_point(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::invalid_argument("two-point law needs x > 0 (an atom at 0 is not admissible)");
  }
  return StepDistribution(SymmetricTwoPoint{x});
}

StepDistribution StepDistribution::pareto(double p) {
  if (!std::isfinite(p) || p <= 0.0) {
    throw std::invalid_argument("pareto law needs exponent p > 0");
  }
  return StepDistribution(SymmetricPareto{p});
}

StepDistribution StepDistribution::uniform() { return StepDistribution(SymmetricUniform{}); }

StepDistribution StepDistribution::mixture(double p) {
  if (!std::isfinite(p) || p <= 0.0 || p > 1.0) {
    throw std::invalid_argument("mixture weight p must lie in (0, 1]");
  }
  return StepDistribution(TwoPointParetoMixture{p});
}

StepDistribution StepDistribution::tabulated(std::vector<double> grid, std::vector<double> cdf) {
  if (grid.empty() || grid.size() != cdf.size()) {
    throw std::invalid_argument("tabulated law needs matching non-empty grid and cdf columns");
  }
  double prev_t = 0.0;
  double prev_f = 0.5;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] <= prev_t) {
      throw std::invalid_argument("tabulated grid must be strictly increasing and positive");
    }
    if (!std::isfinite(cdf[i]) || cdf[i] < prev_f || cdf[i] > 1.0) {
      throw std::invalid_argument(
          "tabulated cdf values must be non-decreasing within [1/2, 1] (no atom at 0)");
    }
    prev_t = grid[i];
    prev_f = cdf[i];
  }
  if (cdf.back() < 1.0 - 1e-12) {
    throw std::invalid_argument("tabulated cdf must reach 1 at the last grid point");
  }
  cdf.back() = 1.0;
  return StepDistribution(TabulatedSymmetric{std::move(grid), std::move(cdf)});
}

double StepDistribution::cdf(double t) const {
  return std::visit(
      [t](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, SymmetricTwoPoint>) {
          if (t < -fam.x) return 0.0;
          if (t < fam.x) return 0.5;
          return 1.0;
        } else if constexpr (std::is_same_v<T, SymmetricPareto>) {
          if (t >= 1.0) return 1.0 - 0.5 * std::pow(t, -fam.p);
          if (t > -1.0) return 0.5;
          return 0.5 * std::pow(-t, -fam.p);
        } else if constexpr (std::is_same_v<T, SymmetricUniform>) {
          return std::clamp(0.5 * (t + 1.0), 0.0, 1.0);
        } else if constexpr (std::is_same_v<T, TwoPointParetoMixture>) {
          const double p = fam.p;
          double two_point_part;
          if (t < -1.0) {
            two_point_part = 0.0;
          } else if (t < 1.0) {
            two_point_part = 0.5;
          } else {
            two_point_part = 1.0;
          }
          double pareto_part;
          if (t >= 1.0) {
            pareto_part = 1.0 - 0.5 * std::pow(t, -p);
          } else if (t > -1.0) {
            pareto_part = 0.5;
          } else {
            pareto_part = 0.5 * std::pow(-t, -p);
          }
          return p * two_point_part + (1.0 - p) * pareto_part;
        } else {
          if (t >= 0.0) return tabulated_positive_cdf(fam, t);
          return 1.0 - tabulated_positive_cdf(fam, -t);
        }
      },
      family_);
}

double StepDistribution::cdf_left(double t) const {
  return std::visit(
      [t, this](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, SymmetricTwoPoint>) {
          if (t <= -fam.x) return 0.0;
          if (t <= fam.x) return 0.5;
          return 1.0;
        } else if constexpr (std::is_same_v<T, TwoPointParetoMixture>) {
          const double p = fam.p;
          double two_point_part;
          if (t <= -1.0) {
            two_point_part = 0.0;
          } else if (t <= 1.0) {
            two_point_part = 0.5;
          } else {
            two_point_part = 1.0;
          }
          double pareto_part;  // continuous component
          if (t >= 1.0) {
            pareto_part = 1.0 - 0.5 * std::pow(t, -p);
          } else if (t > -1.0) {
            pareto_part = 0.5;
          } else {
            pareto_part = 0.5 * std::pow(-t, -p);
          }
          return p * two_point_part + (1.0 - p) * pareto_part;
        } else {
          return cdf(t);  // continuous families
        }
      },
      family_);
}

double StepDistribution::survival(double t) const {
  return std::visit(
      [t, this](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, SymmetricTwoPoint>) {
          if (t < -fam.x) return 1.0;
          if (t < fam.x) return 0.5;
          return 0.0;
        } else if constexpr (std::is_same_v<T, SymmetricPareto>) {
          if (t >= 1.0) return 0.5 * std::pow(t, -fam.p);
          if (t > -1.0) return 0.5;
          return 1.0 - 0.5 * std::pow(-t, -fam.p);
        } else if constexpr (std::is_same_v<T, TwoPointParetoMixture>) {
          const double p = fam.p;
          double two_point_part;
          if (t < -1.0) {
            two_point_part = 1.0;
          } else if (t < 1.0) {
            two_point_part = 0.5;
          } else {
            two_point_part = 0.0;
          }
          double pareto_part;
          if (t >= 1.0) {
            pareto_part = 0.5 * std::pow(t, -p);
          } else if (t > -1.0) {
            pareto_part = 0.5;
          } else {
            pareto_part = 1.0 - 0.5 * std::pow(-t, -p);
          }
          return p * two_point_part + (1.0 - p) * pareto_part;
        } else {
          return 1.0 - cdf(t);
        }
      },
      family_);
}

double StepDistribution::sample(RngStream& rng) const {
  return std::visit(
      [&rng](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, SymmetricTwoPoint>) {
          return fam.x * rng.sign();
        } else if constexpr (std::is_same_v<T, SymmetricPareto>) {
          return pareto_magnitude_from_uniform(fam.p, rng.uniform_open01()) * rng.sign();
        } else if constexpr (std::is_same_v<T, SymmetricUniform>) {
          return rng.uniform01() * rng.sign();
        } else if constexpr (std::is_same_v<T, TwoPointParetoMixture>) {
          if (rng.uniform01() < fam.p) return rng.sign();
          return pareto_magnitude_from_uniform(fam.p, rng.uniform_open01()) * rng.sign();
        } else {
          return tabulated_magnitude(fam, rng.uniform01()) * rng.sign();
        }
      },
      family_);
}

double StepDistribution::alpha_moment(Alpha a) const {
  const double av = a.value();
  return std::visit(
      [av](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, SymmetricTwoPoint>) {
          return std::pow(fam.x, av);
        } else if constexpr (std::is_same_v<T, SymmetricPareto>) {
          return av < fam.p ? fam.p / (fam.p - av) : kInf;
        } else if constexpr (std::is_same_v<T, SymmetricUniform>) {
          return 1.0 / (av + 1.0);
        } else if constexpr (std::is_same_v<T, TwoPointParetoMixture>) {
          if (av >= fam.p) return kInf;
          return fam.p + (1.0 - fam.p) * fam.p / (fam.p - av);
        } else {
          // E|Y|^a = integral of a t^(a-1) P(|Y| > t) dt over the grid span
          const TabulatedSymmetric& tab = fam;
          const double top = tab.grid.back();
          const auto integrand = [&](double t) {
            return av * std::pow(t, av - 1.0) * (2.0 - 2.0 * tabulated_positive_cdf(tab, t));
          };
          return integrate_or_throw(integrand, 0.0, top, 1e-10);
        }
      },
      family_);
}

std::string StepDistribution::describe() const {
  std::ostringstream os;
  std::visit(
      [&os](const auto& fam) {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, SymmetricTwoPoint>) {
          os << "two-point:x=" << fam.x;
        } else if constexpr (std::is_same_v<T, SymmetricPareto>) {
          os << "pareto:p=" << fam.p;
        } else if constexpr (std::is_same_v<T, SymmetricUniform>) {
          os << "uniform";
        } else if constexpr (std::is_same_v<T, TwoPointParetoMixture>) {
          os << "mixture:p=" << fam.p;
        } else {
          os << "table[" << fam.grid.size() << " points]";
        }
      },
      family_);
  return os.str();
}

double pareto_magnitude_from_uniform(double p, double u) {
  if (p == 2.0) return 1.0 / std::sqrt(u);
  if (p == 1.0) return 1.0 / u;
  return std::pow(u, -1.0 / p);
}

}  // namespace kendall
