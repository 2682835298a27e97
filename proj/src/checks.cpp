#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "kendall/convolution.hpp"
#include "kendall/empirical.hpp"
#include "kendall/excursions.hpp"
#include "kendall/quadrature.hpp"
#include "kendall/verify.hpp"
#include "kendall/walk.hpp"
#include "kendall/williamson.hpp"

namespace kendall::verify {

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

VerificationReport make_report(std::string id, std::string suite, ErrorMetric metric,
                               double analytic, double estimate, double error, double tolerance,
                               const CheckContext& ctx, std::uint64_t sample_size, double ms) {
  VerificationReport r;
  r.check_id = std::move(id);
  r.suite = std::move(suite);
  r.analytic = analytic;
  r.estimate = estimate;
  r.error = error;
  r.metric = metric;
  r.tolerance = tolerance;
  r.pass = error <= tolerance;
  r.runtime_ms = ms;
  r.seed = ctx.seed;
  r.sample_size = sample_size;
  return r;
}

std::int64_t scaled(double base, double scale) {
  const auto n = static_cast<std::int64_t>(std::llround(base * scale));
  return std::max<std::int64_t>(n, 1000);
}

double binomial_z(double p_hat, double p, double n) {
  const double var = p * (1.0 - p) / n;
  if (var <= 0.0) return p_hat == p ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(p_hat - p) / std::sqrt(var);
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr mean_stderr(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  MeanStderr out;
  out.mean = mean;
  out.stderr_ = std::sqrt(ss / (n - 1.0) / n);
  return out;
}

double kahan_sum(const std::vector<double>& terms) {
  double sum = 0.0;
  double comp = 0.0;
  for (double t : terms) {
    const double y = t - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum;
}

WalkBatch run_batch(const StepDistribution& dist, double alpha, int steps, std::int64_t paths,
                    std::uint64_t seed, WalkMode mode, std::vector<int> checkpoints = {}) {
  WalkConfig cfg{dist, Alpha(alpha), steps, paths, mode, seed, 0.0, std::move(checkpoints), 0};
  return simulate_batch(cfg);
}

// ---------------------------------------------------------------------------
// exact identities
// ---------------------------------------------------------------------------

std::vector<VerificationReport> homomorphism_check(const CheckContext& ctx) {
  Timer timer;
  const double xs[] = {0.0, 0.3, 1.0, 2.5};
  const double ys[] = {0.0, 0.7, 1.0, 4.0};
  const double ts[] = {0.1, 0.4, 1.0, 2.2, 3.0};
  const double alphas[] = {0.5, 1.0, 2.0};
  double worst = 0.0;
  std::uint64_t count = 0;
  for (double av : alphas) {
    const Alpha alpha(av);
    for (double x : xs) {
      for (double y : ys) {
        const PointConvolutionLaw law = convolve_point(x, y, alpha);
        for (double t : ts) {
          const double lhs = law.transform(t);
          const double rhs = psi(alpha, x * t) * psi(alpha, y * t);
          worst = std::max(worst, std::abs(lhs - rhs));
          ++count;
        }
      }
    }
  }
  return {make_report("transform-homomorphism", "exact-identities", ErrorMetric::abs, 0.0, worst,
                      worst, 1e-12, ctx, count, timer.ms())};
}

std::vector<VerificationReport> factorization_check(const CheckContext& ctx) {
  Timer timer;
  const double ss[] = {0.25, 0.5, 0.75, 1.0};
  const double us[] = {0.1, 0.25, 0.5, 0.9};
  const StepDistribution bases[] = {StepDistribution::two_point(1.0),
                                    StepDistribution::uniform()};
  double worst = 0.0;
  std::uint64_t count = 0;
  for (const auto& base : bases) {
    for (double av : {0.5, 1.0}) {
      const ExcursionLaw law(base, Alpha(av));
      for (double s : ss) {
        for (double u : us) {
          const double lhs = wiener_hopf_H(law, s, u);
          const double rhs = tau_pgf(s) * geometric_kendall_transform(s, law, 1.0 / u);
          worst = std::max(worst, std::abs(lhs - rhs));
          ++count;
        }
      }
    }
  }
  return {make_report("wiener-hopf-factorization", "exact-identities", ErrorMetric::abs, 0.0, worst,
                      worst, 1e-12, ctx, count, timer.ms())};
}

std::vector<VerificationReport> point_mass_square_check(const CheckContext& ctx) {
  Timer timer;
  double worst = 0.0;
  std::uint64_t count = 0;
  for (double av : {0.5, 1.0, 2.0}) {
    const Alpha alpha(av);
    const ConvolutionPowerLaw square{StepDistribution::two_point(1.0), 2, alpha};
    const StepDistribution limit = StepDistribution::pareto(2.0 * av);
    for (int j = 1; j <= 100; ++j) {
      const double t = 0.05 * j;
      worst = std::max(worst, std::abs(power_cdf(square, t) - limit.cdf(t)));
      worst = std::max(worst, std::abs(power_cdf(square, -t) - limit.cdf(-t)));
      count += 2;
    }
  }
  return {make_report("two-point-square", "exact-identities", ErrorMetric::abs, 0.0,
                      worst, worst, 1e-12, ctx, count, timer.ms())};
}

std::vector<VerificationReport> kernel_scaling_check(const CheckContext& ctx) {
  Timer timer;
  const double pts[] = {0.0, 0.5, 1.0, 2.0};
  const double ts[] = {0.5, 1.5, 3.0};
  const double scales[] = {0.5, 2.0, 7.3};
  double worst = 0.0;
  std::uint64_t count = 0;
  for (double av : {0.5, 1.0, 2.0}) {
    const Alpha alpha(av);
    for (double x : pts) {
      for (double y : pts) {
        for (double t : ts) {
          const double base = kernel_cdf_h(x, y, t, alpha);
          for (double a : scales) {
            worst = std::max(worst, std::abs(kernel_cdf_h(a * x, a * y, a * t, alpha) - base));
            ++count;
          }
        }
      }
    }
  }
  return {make_report("kernel-dilation-equivariance", "exact-identities", ErrorMetric::abs, 0.0, worst,
                      worst, 1e-12, ctx, count, timer.ms())};
}

std::vector<VerificationReport> stable_limit_check(const CheckContext& ctx) {
  Timer timer;
  std::vector<VerificationReport> out;

  // rescaled n-fold transform of the two-point law against its limit
  const int n = 10000;
  double worst = 0.0;
  std::uint64_t count = 0;
  for (double av : {0.5, 1.0, 2.0}) {
    const Alpha alpha(av);
    const double cn = std::pow(static_cast<double>(n), -1.0 / av);
    for (int j = 0; j <= 300; ++j) {
      const double t = 0.01 * j;
      const double lhs = std::pow(psi(alpha, cn * t), n);
      const double rhs = std::exp(-std::pow(t, av));
      worst = std::max(worst, std::abs(lhs - rhs));
      ++count;
    }
  }
  out.push_back(make_report("stable-limit/convergence", "exact-identities",
                            ErrorMetric::abs, 0.0, worst, worst, 2.0 / n, ctx, count, timer.ms()));

  // transform inversion applied to e^{-t^-alpha} recovers the limit CDF
  worst = 0.0;
  count = 0;
  for (double av : {0.5, 1.0, 2.0}) {
    TransformFn tf{Alpha(av),
                   [av](double t) { return std::exp(-std::pow(std::abs(t), av)); },
                   [av](double t) {
                     const double x = std::pow(t, -av);
                     return av * std::pow(t, -av - 1.0) * std::exp(-x);
                   }};
    for (int j = 1; j <= 100; ++j) {
      const double t = 0.04 * j;
      worst = std::max(worst, std::abs(cdf_from_transform(tf, t) - stable_limit_cdf(t, Alpha(av))));
      ++count;
    }
  }
  out.push_back(make_report("stable-limit/inversion", "exact-identities",
                            ErrorMetric::abs, 0.0, worst, worst, 1e-10, ctx, count, timer.ms()));
  return out;
}

std::vector<VerificationReport> phi_series_check(const CheckContext& ctx) {
  Timer timer;
  std::vector<VerificationReport> out;
  const StepDistribution bases[] = {
      StepDistribution::two_point(1.0), StepDistribution::uniform(),
      StepDistribution::mixture(0.5), StepDistribution::pareto(1.8)};
  const double ts[] = {0.5, 1.5, 2.0, 5.0, 20.0};

  // The truncation tail after 60 terms is below 2^-60, well under the 2^-55
  // budget, but double rounding alone moves either route by ~1e-16. The
  // identity is therefore reconciled in extended precision from the library's
  // own F and G values, and the double-precision library routes are held to a
  // separate bound at their rounding floor.
  double worst_identity = 0.0;
  double worst_library = 0.0;
  std::uint64_t count = 0;
  for (const auto& base : bases) {
    const ExcursionLaw law(base, Alpha(0.9));
    for (double t : ts) {
      const long double f = law.F(t);
      const long double g = law.G(t);
      long double series = 0.0L;
      for (int k = 1; k <= 60; ++k) {
        series += std::pow(0.5L, k) * std::pow(g, k - 1) *
                  (2.0L * k * (f - 0.5L) - (k - 1) * g);
      }
      const long double closed = (4.0L * f - 2.0L - g * g) / ((2.0L - g) * (2.0L - g));
      worst_identity = std::max(worst_identity, static_cast<double>(std::abs(series - closed)));

      std::vector<double> terms;
      terms.reserve(60);
      for (int k = 1; k <= 60; ++k) terms.push_back(phi_n(law, k, t));
      worst_library = std::max(worst_library,
                               std::abs(kahan_sum(terms) - overshoot_cdf(law, t)));
      ++count;
    }
  }
  out.push_back(make_report("excursion-series/identity", "exact-identities", ErrorMetric::abs,
                            0.0, worst_identity, worst_identity, std::ldexp(1.0, -55), ctx, count,
                            timer.ms()));
  out.push_back(make_report("excursion-series/library-routes", "exact-identities",
                            ErrorMetric::abs, 0.0, worst_library, worst_library, 1e-14, ctx,
                            count, timer.ms()));
  return out;
}

std::vector<VerificationReport> examples_cross_route_check(const CheckContext& ctx) {
  Timer timer;
  std::vector<VerificationReport> out;
  std::vector<double> grid;
  for (int j = 1; j <= 60; ++j) grid.push_back(0.1 * j);

  // each closed-form family against the generic transform-power route
  double worst = 0.0;
  std::uint64_t count = 0;
  const auto compare = [&](ExampleFamily fam, const StepDistribution& base, double av, double p,
                           std::initializer_list<int> ns) {
    const Alpha alpha(av);
    for (int n : ns) {
      const ConvolutionPowerLaw law{base, n, alpha};
      for (double t : grid) {
        worst = std::max(worst, std::abs(example_cdf(fam, n, alpha, p, t) - power_cdf(law, t)));
        worst = std::max(worst, std::abs(example_cdf(fam, n, alpha, p, -t) - power_cdf(law, -t)));
        count += 2;
      }
    }
  };
  compare(ExampleFamily::uniform, StepDistribution::uniform(), 0.5, 0.0, {1, 2, 3, 7});
  compare(ExampleFamily::uniform, StepDistribution::uniform(), 1.0, 0.0, {2, 5});
  compare(ExampleFamily::two_point, StepDistribution::two_point(1.0), 0.5, 0.0, {1, 2, 5});
  compare(ExampleFamily::two_point, StepDistribution::two_point(1.0), 1.0, 0.0, {3, 10});
  compare(ExampleFamily::mixture, StepDistribution::mixture(0.6), 0.9, 0.6, {1, 2, 4});
  compare(ExampleFamily::pareto, StepDistribution::pareto(1.6), 0.8, 0.0, {1, 2, 3});
  out.push_back(make_report("power-families/power-route", "exact-identities",
                            ErrorMetric::abs, 0.0, worst, worst, 1e-10, ctx, count, timer.ms()));

  // mixture degenerates to the two-point family at p = 1
  worst = 0.0;
  count = 0;
  for (int n : {2, 5}) {
    for (double t : grid) {
      const double lhs = example_cdf(ExampleFamily::mixture, n, Alpha(0.7), 1.0, t);
      const double rhs = example_cdf(ExampleFamily::two_point, n, Alpha(0.7), 0.0, t);
      worst = std::max(worst, std::abs(lhs - rhs));
      ++count;
    }
  }
  out.push_back(make_report("power-families/mixture-degenerates", "exact-identities",
                            ErrorMetric::abs, 0.0, worst, worst, 1e-9, ctx, count, timer.ms()));

  // the pareto family is the two-point family at doubled order
  worst = 0.0;
  count = 0;
  for (int n : {1, 2, 3, 5}) {
    for (double t : grid) {
      const double lhs = example_cdf(ExampleFamily::pareto, n, Alpha(0.6), 0.0, t);
      const double rhs = example_cdf(ExampleFamily::two_point, 2 * n, Alpha(0.6), 0.0, t);
      worst = std::max(worst, std::abs(lhs - rhs));
      ++count;
    }
  }
  out.push_back(make_report("power-families/pareto-doubling", "exact-identities",
                            ErrorMetric::abs, 0.0, worst, worst, 1e-12, ctx, count, timer.ms()));
  return out;
}

// ---------------------------------------------------------------------------
// quadrature identities
// ---------------------------------------------------------------------------

struct NamedFamily {
  const char* name;
  StepDistribution dist;
  std::vector<double> atoms;  // jump points of the CDF
};

std::vector<NamedFamily> closed_form_families(double alpha) {
  return {{"two-point", StepDistribution::two_point(1.0), {1.0}},
          {"pareto", StepDistribution::pareto(2.0 * alpha), {}},
          {"uniform", StepDistribution::uniform(), {}},
          {"mixture", StepDistribution::mixture(0.5), {1.0}}};
}

std::vector<VerificationReport> inversion_roundtrip_check(const CheckContext& ctx) {
  std::vector<VerificationReport> out;
  const auto run_family = [&](const NamedFamily& fam, double av) {
    Timer timer;
    const Alpha alpha(av);
    const TransformFn analytic = transform_of(fam.dist, alpha);
    TransformFn differenced = analytic;
    differenced.g_prime = nullptr;

    double worst_analytic = 0.0;
    double worst_fd = 0.0;
    std::uint64_t count = 0;
    for (int j = 1; j <= 200; ++j) {
      const double t = 0.025 * j;
      bool near_atom = false;
      for (double a : fam.atoms) near_atom = near_atom || std::abs(t - a) < 1e-4;
      if (near_atom) continue;  // jump points are excluded by the inversion formula
      const double f = fam.dist.cdf(t);
      worst_analytic = std::max(worst_analytic, std::abs(cdf_from_transform(analytic, t) - f));
      worst_fd = std::max(worst_fd, std::abs(cdf_from_transform(differenced, t) - f));
      ++count;
    }
    const std::string prefix =
        std::string("inversion-roundtrip/") + fam.name + "/alpha=" + std::to_string(av);
    out.push_back(make_report(prefix + "/analytic", "quadrature-identities", ErrorMetric::abs, 0.0,
                              worst_analytic, worst_analytic, 1e-8, ctx, count, timer.ms()));
    out.push_back(make_report(prefix + "/fd", "quadrature-identities", ErrorMetric::abs, 0.0,
                              worst_fd, worst_fd, 1e-4, ctx, count, timer.ms()));
  };
  for (const auto& fam : closed_form_families(0.8)) run_family(fam, 0.8);
  run_family(NamedFamily{"two-point", StepDistribution::two_point(1.0), {1.0}}, 0.5);
  run_family(NamedFamily{"two-point", StepDistribution::two_point(1.0), {1.0}}, 2.0);
  return out;
}

std::vector<VerificationReport> g_integral_check(const CheckContext& ctx) {
  Timer timer;
  double worst = 0.0;
  std::uint64_t count = 0;
  for (double av : {0.5, 1.0, 2.0}) {
    const Alpha alpha(av);
    for (const auto& fam : closed_form_families(av)) {
      for (double t : {0.3, 0.7, 1.0, 2.0, 5.0}) {
        const auto integrand = [&](double x) {
          return std::pow(x, av - 1.0) * fam.dist.cdf(x);
        };
        const double integral =
            integrate_or_throw(integrand, 0.0, t, 1e-12 * std::max(1.0, std::pow(t, av)), 8000);
        const double g_quad = -1.0 + 2.0 * av * std::pow(t, -av) * integral;
        worst = std::max(worst, std::abs(g_quad - williamson_g(fam.dist, alpha, t)));
        ++count;
      }
    }
  }
  return {make_report("transform-integral-identity", "quadrature-identities", ErrorMetric::abs, 0.0,
                      worst, worst, 1e-8, ctx, count, timer.ms())};
}

std::vector<VerificationReport> moment_identity_check(const CheckContext& ctx) {
  std::vector<VerificationReport> out;
  struct Case {
    const char* name;
    StepDistribution dist;
    double alpha;
    double expected;  // 2 E|Y|^alpha
  };
  const Case cases[] = {
      {"two-point", StepDistribution::two_point(1.0), 1.0, 2.0},
      {"uniform", StepDistribution::uniform(), 1.0, 1.0},
      {"pareto", StepDistribution::pareto(1.6), 0.8, 4.0},
      {"mixture", StepDistribution::mixture(0.5), 0.3, 3.5},
  };
  for (const auto& c : cases) {
    Timer timer;
    const ExcursionLaw law(c.dist, Alpha(c.alpha));
    const double analytic = overshoot_alpha_moment(law);
    const double estimate = overshoot_alpha_moment_quadrature(law);
    const double rel = std::abs(estimate - analytic) / std::abs(analytic);
    auto r = make_report(std::string("ladder-moment-identity/") + c.name, "quadrature-identities",
                         ErrorMetric::rel, analytic, estimate, rel, 1e-6, ctx, 0, timer.ms());
    r.pass = r.pass && std::abs(analytic - c.expected) < 1e-12;
    out.push_back(r);
  }
  return out;
}

std::vector<VerificationReport> density_normalization_check(const CheckContext& ctx) {
  Timer timer;
  std::vector<VerificationReport> out;
  // fold |t| >= 1 onto (0, 1] via t = 1/s; factor 2 covers both tails
  {
    const Alpha alpha(0.7);
    const auto integrand = [&](double s) {
      return example_two_point_density(5, alpha, 1.0 / s) / (s * s);
    };
    const double mass = 2.0 * integrate_or_throw(integrand, 0.0, 1.0, 1e-10, 4000);
    out.push_back(make_report("power-density-normalization/two-point-n5", "quadrature-identities",
                              ErrorMetric::abs, 1.0, mass, std::abs(mass - 1.0), 1e-8, ctx, 0,
                              timer.ms()));
  }
  {
    const Alpha alpha(0.8);
    const auto integrand = [&](double s) {
      return example_pareto_density(3, alpha, 1.0 / s) / (s * s);
    };
    const double mass = 2.0 * integrate_or_throw(integrand, 0.0, 1.0, 1e-10, 4000);
    out.push_back(make_report("power-density-normalization/pareto-n3", "quadrature-identities",
                              ErrorMetric::abs, 1.0, mass, std::abs(mass - 1.0), 1e-8, ctx, 0,
                              timer.ms()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo laws
// ---------------------------------------------------------------------------

std::vector<VerificationReport> geometric_law_check(const CheckContext& ctx) {
  std::vector<VerificationReport> out;
  struct Combo {
    const char* name;
    StepDistribution dist;
    double alpha;
  };
  const Combo combos[] = {
      {"two-point/alpha=0.5", StepDistribution::two_point(1.0), 0.5},
      {"two-point/alpha=1", StepDistribution::two_point(1.0), 1.0},
      {"uniform/alpha=0.5", StepDistribution::uniform(), 0.5},
      {"uniform/alpha=1", StepDistribution::uniform(), 1.0},
  };
  const std::int64_t n = scaled(1e6, ctx.scale);
  std::uint64_t salt = 0;
  for (const auto& c : combos) {
    Timer timer;
    const auto batch = run_batch(c.dist, c.alpha, 60, n, ctx.seed + salt++, WalkMode::kernel);
    std::vector<std::int64_t> counts(11, 0);
    std::int64_t missing = 0;
    for (const auto& rec : batch.up_crossings) {
      if (rec.tau == 0) ++missing;
      if (rec.tau >= 1 && rec.tau <= 10) ++counts[rec.tau];
    }
    // P(no crossing within 60 steps) = 2^-60: one miss means a broken walk
    double max_z = missing == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 10; ++k) {
      const double p = tau_pmf(k);
      const double p_hat = static_cast<double>(counts[k]) / static_cast<double>(n);
      max_z = std::max(max_z, binomial_z(p_hat, p, static_cast<double>(n)));
    }

    // side batch small enough to retain trajectories: the streaming records
    // must agree with first_passage applied to the stored paths
    const std::int64_t n_side = std::min<std::int64_t>(n, 20000);
    const auto side = run_batch(c.dist, c.alpha, 60, n_side, ctx.seed + salt + 51, WalkMode::kernel);
    for (std::size_t p = 0; p < side.trajectories.size(); ++p) {
      const auto event = first_passage(side.trajectories[p], 0.0, Direction::up);
      const auto& rec = side.up_crossings[p];
      const bool match = event ? (rec.tau == static_cast<std::uint32_t>(event->tau) &&
                                  rec.value == event->value)
                               : rec.tau == 0;
      if (!match) max_z = std::numeric_limits<double>::infinity();
    }

    out.push_back(make_report(std::string("crossing-time-geometric/") + c.name, "mc-laws",
                              ErrorMetric::z_score, 0.0, max_z, max_z, 3.0, ctx,
                              static_cast<std::uint64_t>(n), timer.ms()));
  }
  return out;
}

std::vector<VerificationReport> marginals_check(const CheckContext& ctx) {
  std::vector<VerificationReport> out;
  struct Combo {
    const char* name;
    StepDistribution dist;
    ExampleFamily family;
    double param;
  };
  const double av = 0.8;
  const Combo combos[] = {
      {"two-point", StepDistribution::two_point(1.0), ExampleFamily::two_point, 0.0},
      {"uniform", StepDistribution::uniform(), ExampleFamily::uniform, 0.0},
      {"mixture", StepDistribution::mixture(0.5), ExampleFamily::mixture, 0.5},
      {"pareto", StepDistribution::pareto(1.6), ExampleFamily::pareto, 0.0},
  };
  const std::int64_t n = scaled(1e5, ctx.scale);
  std::uint64_t salt = 100;
  for (const auto& c : combos) {
    Timer timer;
    const auto batch =
        run_batch(c.dist, av, 10, n, ctx.seed + salt++, WalkMode::kernel, {2, 5, 10});
    for (std::size_t ci = 0; ci < batch.checkpoint_steps.size(); ++ci) {
      const int step = batch.checkpoint_steps[ci];
      const EmpiricalCDF emp(batch.checkpoint_values[ci]);
      const auto cdf = [&](double t) {
        return example_cdf(c.family, step, Alpha(av), c.param, t);
      };
      const double d = ks_distance(emp, cdf);
      const double crit = ks_critical_1pct(emp.count());
      out.push_back(make_report(std::string("walk-marginals/") + c.name + "/n=" +
                                    std::to_string(step),
                                "mc-laws", ErrorMetric::ks, 0.0, d, d, crit, ctx,
                                static_cast<std::uint64_t>(n), timer.ms()));
    }
  }
  return out;
}

std::vector<VerificationReport> overshoot_law_check(const CheckContext& ctx) {
  std::vector<VerificationReport> out;
  Timer timer;
  const StepDistribution dist = StepDistribution::two_point(1.0);
  const ExcursionLaw law(dist, Alpha(1.0));
  const std::int64_t n = scaled(1e6, ctx.scale);
  const auto batch = run_batch(dist, 1.0, 60, n, ctx.seed, WalkMode::kernel);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  std::int64_t below_two = 0;
  for (const auto& rec : batch.up_crossings) {
    if (rec.tau == 0) continue;
    values.push_back(rec.value);
    if (rec.value < 2.0) ++below_two;
  }
  const EmpiricalCDF emp(std::move(values));
  const double d = ks_distance(
      emp, [&](double t) { return overshoot_cdf(law, t); },
      [&](double t) { return overshoot_cdf_left(law, t); });
  const double crit = ks_critical_1pct(emp.count());
  out.push_back(make_report("ladder-height-law/ks", "mc-laws", ErrorMetric::ks, 0.0, d, d,
                            crit, ctx, emp.count(), timer.ms()));

  const double p = 7.0 / 9.0;  // P{X_tau < 2} for the unit two-point law at alpha = 1
  const double p_hat = static_cast<double>(below_two) / static_cast<double>(emp.count());
  const double z = binomial_z(p_hat, p, static_cast<double>(emp.count()));
  out.push_back(make_report("ladder-height-law/spot-t2", "mc-laws", ErrorMetric::z_score, p,
                            p_hat, z, 3.0, ctx, emp.count(), timer.ms()));
  return out;
}

std::vector<VerificationReport> wiener_hopf_mc_check(const CheckContext& ctx) {
  std::vector<VerificationReport> out;
  struct Combo {
    const char* name;
    StepDistribution dist;
  };
  const Combo combos[] = {
      {"two-point", StepDistribution::two_point(1.0)},
      {"uniform", StepDistribution::uniform()},
  };
  const double av = 1.0;
  const std::int64_t n = scaled(1e6, ctx.scale);
  std::uint64_t salt = 200;
  for (const auto& c : combos) {
    Timer timer;
    const ExcursionLaw law(c.dist, Alpha(av));
    const auto batch = run_batch(c.dist, av, 60, n, ctx.seed + salt++, WalkMode::kernel);
    for (double s : {0.25, 0.5, 0.75, 1.0}) {
      for (double u : {0.1, 0.25, 0.5, 0.9}) {
        std::vector<double> v;
        v.reserve(static_cast<std::size_t>(n));
        for (const auto& rec : batch.up_crossings) {
          if (rec.tau == 0) {
            v.push_back(0.0);  // s^tau vanishes at tau = infinity for s <= 1
          } else {
            v.push_back(std::pow(s, static_cast<double>(rec.tau)) *
                        psi(Alpha(av), u * rec.value));
          }
        }
        const auto stat = mean_stderr(v);
        const double h = wiener_hopf_H(law, s, u);
        const double z = std::abs(stat.mean - h) / stat.stderr_;
        char id[128];
        std::snprintf(id, sizeof(id), "wiener-hopf-mc/%s/s=%.2f,u=%.2f", c.name, s, u);
        out.push_back(make_report(id, "mc-laws", ErrorMetric::z_score, h, stat.mean, z, 3.0, ctx,
                                  static_cast<std::uint64_t>(n), timer.ms()));
      }
    }
  }
  return out;
}

std::vector<VerificationReport> mode_equivalence_check(const CheckContext& ctx) {
  std::vector<VerificationReport> out;
  struct Combo {
    const char* name;
    StepDistribution dist;
  };
  const Combo combos[] = {
      {"two-point", StepDistribution::two_point(1.0)},
      {"uniform", StepDistribution::uniform()},
  };
  const std::int64_t n = scaled(1e5, ctx.scale);
  std::uint64_t salt = 300;
  for (const auto& c : combos) {
    Timer timer;
    auto kernel_batch = run_batch(c.dist, 1.0, 5, n, ctx.seed + salt, WalkMode::kernel, {5});
    auto recursion_batch =
        run_batch(c.dist, 1.0, 5, n, ctx.seed + salt + 7, WalkMode::recursion, {5});
    salt += 13;
    const EmpiricalCDF a(std::move(kernel_batch.checkpoint_values[0]));
    const EmpiricalCDF b(std::move(recursion_batch.checkpoint_values[0]));
    const double d = two_sample_ks(a, b);
    const double crit = two_sample_ks_critical_1pct(a.count(), b.count());
    out.push_back(make_report(std::string("mode-equivalence/") + c.name, "mc-laws",
                              ErrorMetric::ks, 0.0, d, d, crit, ctx,
                              static_cast<std::uint64_t>(2 * n), timer.ms()));
  }
  return out;
}

std::vector<VerificationReport> transition_mc_check(const CheckContext& ctx) {
  std::vector<VerificationReport> out;
  struct Combo {
    const char* name;
    StepDistribution dist;
    double alpha;
    double x;
  };
  const Combo combos[] = {
      {"two-point/x=0", StepDistribution::two_point(1.0), 1.0, 0.0},
      {"two-point/x=1", StepDistribution::two_point(1.0), 1.0, 1.0},
      {"two-point/x=-0.5", StepDistribution::two_point(1.0), 1.0, -0.5},
      {"uniform/x=0", StepDistribution::uniform(), 0.5, 0.0},
      {"uniform/x=0.8", StepDistribution::uniform(), 0.5, 0.8},
  };
  const std::int64_t n = scaled(1e6, ctx.scale);
  std::uint64_t salt = 400;
  for (const auto& c : combos) {
    Timer timer;
    const Alpha alpha(c.alpha);
    RngStream rng(ctx.seed + salt++, 0);
    const double ts[] = {0.5, 1.2, 2.0, 3.0};
    std::int64_t counts[4] = {0, 0, 0, 0};
    for (std::int64_t i = 0; i < n; ++i) {
      const double x1 = step_kernel(c.x, c.dist, alpha, rng);
      for (int j = 0; j < 4; ++j) {
        if (x1 > 0.0 && x1 < ts[j]) ++counts[j];
      }
    }
    double max_z = 0.0;
    for (int j = 0; j < 4; ++j) {
      const double p = transition_cdf(c.x, c.dist, ts[j], alpha);
      const double p_hat = static_cast<double>(counts[j]) / static_cast<double>(n);
      max_z = std::max(max_z, binomial_z(p_hat, p, static_cast<double>(n)));
    }
    out.push_back(make_report(std::string("transition-kernel-mc/") + c.name, "mc-laws",
                              ErrorMetric::z_score, 0.0, max_z, max_z, 3.0, ctx,
                              static_cast<std::uint64_t>(n), timer.ms()));
  }
  return out;
}

std::vector<VerificationReport> phi_mc_check(const CheckContext& ctx) {
  std::vector<VerificationReport> out;
  const StepDistribution dist = StepDistribution::two_point(1.0);
  const ExcursionLaw law(dist, Alpha(1.0));
  struct Case {
    int n;
    double t;
  };
  const Case cases[] = {{2, 2.0}, {3, 1.5}};
  const std::int64_t n_paths = scaled(1e6, ctx.scale);
  std::uint64_t salt = 500;
  for (const auto& c : cases) {
    Timer timer;
    const auto batch = run_batch(dist, 1.0, c.n, n_paths, ctx.seed + salt++, WalkMode::kernel);
    std::int64_t hits = 0;
    for (const auto& traj : batch.trajectories) {
      bool negative_prefix = true;
      for (int k = 0; k + 1 < c.n; ++k) negative_prefix = negative_prefix && traj[k] <= 0.0;
      const double last = traj[static_cast<std::size_t>(c.n) - 1];
      if (negative_prefix && last > 0.0 && last < c.t) ++hits;
    }
    const double p = phi_n(law, c.n, c.t);
    const double p_hat = static_cast<double>(hits) / static_cast<double>(n_paths);
    const double z = binomial_z(p_hat, p, static_cast<double>(n_paths));
    out.push_back(make_report("excursion-prefix-mc/n=" + std::to_string(c.n), "mc-laws",
                              ErrorMetric::z_score, p, p_hat, z, 3.0, ctx,
                              static_cast<std::uint64_t>(n_paths), timer.ms()));
  }
  return out;
}

std::vector<VerificationReport> geometric_kendall_mc_check(const CheckContext& ctx) {
  std::vector<VerificationReport> out;
  const StepDistribution dist = StepDistribution::two_point(1.0);
  const Alpha alpha(1.0);
  const ExcursionLaw law(dist, alpha);
  const std::int64_t n = scaled(2e5, ctx.scale);
  std::uint64_t salt = 600;
  for (double s : {0.5, 1.0}) {
    for (double t : {2.0, 4.0}) {
      Timer timer;
      RngStream rng(ctx.seed + salt++, 0);
      std::vector<double> v;
      v.reserve(static_cast<std::size_t>(n));
      for (std::int64_t i = 0; i < n; ++i) {
        int steps = 1;
        if (s > 0.0) {
          const double u = rng.uniform_open01();
          steps = 1 + static_cast<int>(std::floor(std::log(u) / std::log(0.5 * s)));
          steps = std::clamp(steps, 1, 4096);
        }
        double x = 0.0;
        for (int k = 0; k < steps; ++k) x = step_kernel(x, dist, alpha, rng);
        v.push_back(psi(alpha, x / t));
      }
      const auto stat = mean_stderr(v);
      const double target = geometric_kendall_transform(s, law, t);
      const double z = std::abs(stat.mean - target) / stat.stderr_;
      char id[96];
      std::snprintf(id, sizeof(id), "geometric-kendall-mc/s=%.1f,t=%.0f", s, t);
      out.push_back(make_report(id, "mc-laws", ErrorMetric::z_score, target, stat.mean, z, 3.0,
                                ctx, static_cast<std::uint64_t>(n), timer.ms()));
    }
  }
  return out;
}

std::vector<VerificationReport> moment_mc_check(const CheckContext& ctx) {
  std::vector<VerificationReport> out;
  struct Case {
    const char* name;
    StepDistribution dist;
  };
  const Case cases[] = {
      {"two-point", StepDistribution::two_point(1.0)},
      {"uniform", StepDistribution::uniform()},
  };
  const double av = 1.0;
  const std::int64_t n = scaled(2.5e5, ctx.scale);
  std::uint64_t salt = 700;
  for (const auto& c : cases) {
    Timer timer;
    const ExcursionLaw law(c.dist, Alpha(av));
    const auto batch = run_batch(c.dist, av, 60, n, ctx.seed + salt++, WalkMode::kernel);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n));
    for (const auto& rec : batch.up_crossings) {
      if (rec.tau != 0) values.push_back(std::pow(rec.value, av));
    }
    // tail index 2: the plain mean converges poorly, median-of-means does not
    const double estimate = median_of_means(values, 32);
    const double analytic = overshoot_alpha_moment(law);
    const double rel = std::abs(estimate - analytic) / analytic;
    out.push_back(make_report(std::string("ladder-moment-mc/") + c.name, "mc-laws",
                              ErrorMetric::rel, analytic, estimate, rel, 0.05, ctx,
                              static_cast<std::uint64_t>(n), timer.ms()));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& tracked_operations() {
  static const std::vector<std::string> ops = {
      "williamson.psi",
      "williamson.transform",
      "williamson.g",
      "williamson.cdf_from_transform",
      "convolution.convolve_point",
      "convolution.kernel_cdf_h",
      "convolution.transition_cdf",
      "convolution.power_cdf",
      "convolution.example_cdf",
      "convolution.stable_limit_cdf",
      "walk.step_kernel",
      "walk.step_recursion",
      "walk.first_passage",
      "excursions.phi_n",
      "excursions.tau_pgf",
      "excursions.overshoot_cdf",
      "excursions.geometric_kendall_transform",
      "excursions.wiener_hopf_H",
      "excursions.overshoot_alpha_moment",
  };
  return ops;
}

const std::vector<Check>& check_registry() {
  static const std::vector<Check> registry = {
      {"transform-homomorphism",
       "exact-identities",
       {"convolution.convolve_point", "williamson.psi", "williamson.transform"},
       homomorphism_check},
      {"wiener-hopf-factorization",
       "exact-identities",
       {"excursions.wiener_hopf_H", "excursions.tau_pgf",
        "excursions.geometric_kendall_transform"},
       factorization_check},
      {"two-point-square",
       "exact-identities",
       {"convolution.power_cdf"},
       point_mass_square_check},
      {"kernel-dilation-equivariance",
       "exact-identities",
       {"convolution.kernel_cdf_h"},
       kernel_scaling_check},
      {"stable-limit",
       "exact-identities",
       {"convolution.stable_limit_cdf", "williamson.cdf_from_transform", "williamson.psi"},
       stable_limit_check},
      {"excursion-series",
       "exact-identities",
       {"excursions.phi_n", "excursions.overshoot_cdf"},
       phi_series_check},
      {"power-families",
       "exact-identities",
       {"convolution.example_cdf", "convolution.power_cdf"},
       examples_cross_route_check},
      {"inversion-roundtrip",
       "quadrature-identities",
       {"williamson.cdf_from_transform", "williamson.transform", "williamson.g"},
       inversion_roundtrip_check},
      {"transform-integral-identity",
       "quadrature-identities",
       {"williamson.transform", "williamson.g"},
       g_integral_check},
      {"ladder-moment-identity",
       "quadrature-identities",
       {"excursions.overshoot_alpha_moment"},
       moment_identity_check},
      {"power-density-normalization",
       "quadrature-identities",
       {"convolution.example_cdf"},
       density_normalization_check},
      {"crossing-time-geometric",
       "mc-laws",
       {"walk.step_kernel", "walk.first_passage"},
       geometric_law_check},
      {"walk-marginals",
       "mc-laws",
       {"walk.step_kernel", "convolution.power_cdf", "convolution.example_cdf"},
       marginals_check},
      {"ladder-height-law",
       "mc-laws",
       {"walk.first_passage", "excursions.overshoot_cdf"},
       overshoot_law_check},
      {"wiener-hopf-mc",
       "mc-laws",
       {"excursions.wiener_hopf_H", "walk.step_kernel", "walk.first_passage"},
       wiener_hopf_mc_check},
      {"mode-equivalence",
       "mc-laws",
       {"walk.step_recursion", "walk.step_kernel"},
       mode_equivalence_check},
      {"transition-kernel-mc",
       "mc-laws",
       {"convolution.transition_cdf", "walk.step_kernel"},
       transition_mc_check},
      {"excursion-prefix-mc",
       "mc-laws",
       {"excursions.phi_n", "walk.step_kernel"},
       phi_mc_check},
      {"geometric-kendall-mc",
       "mc-laws",
       {"excursions.geometric_kendall_transform", "walk.step_kernel"},
       geometric_kendall_mc_check},
      {"ladder-moment-mc",
       "mc-laws",
       {"excursions.overshoot_alpha_moment", "walk.first_passage"},
       moment_mc_check},
  };
  return registry;
}

}  // namespace kendall::verify
