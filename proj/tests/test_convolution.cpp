#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "kendall/convolution.hpp"
#include "kendall/empirical.hpp"
#include "kendall/williamson.hpp"
#include "oracles.hpp"

using namespace kendall;

TEST_CASE("point convolution structure") {
  const auto self = convolve_point(1.0, 1.0, Alpha(0.7));
  CHECK(self.scale == 1.0);
  CHECK(self.pareto_weight == 1.0);

  const auto with_zero = convolve_point(5.0, 0.0, Alpha(1.0));
  CHECK(with_zero.scale == 5.0);
  CHECK(with_zero.pareto_weight == 0.0);

  const auto generic = convolve_point(1.0, 2.0, Alpha(1.0));
  CHECK(generic.scale == 2.0);
  CHECK(generic.pareto_weight == 0.5);

  const auto degenerate = convolve_point(0.0, 0.0, Alpha(1.0));
  CHECK(degenerate.scale == 0.0);
  CHECK(degenerate.transform(3.0) == 1.0);
  CHECK(degenerate.cdf(-0.1) == 0.0);
  CHECK(degenerate.cdf(0.0) == 1.0);
  RngStream rng(1, 0);
  CHECK(degenerate.sample(rng) == 0.0);
}

TEST_CASE("transform of a point convolution multiplies the kernels") {
  for (double av : {0.5, 1.0, 2.0}) {
    const Alpha alpha(av);
    for (double x : {0.0, 0.3, 1.0, 2.5}) {
      for (double y : {0.0, 0.7, 1.0, 4.0}) {
        const auto law = convolve_point(x, y, alpha);
        for (double t : {0.1, 0.4, 1.0, 2.2}) {
          REQUIRE(std::abs(law.transform(t) - psi(alpha, x * t) * psi(alpha, y * t)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("convolving the unit atoms yields the pareto law exactly") {
  // cdf route and sampler route both land on pareto(2 alpha)
  const auto law = convolve_point(1.0, 1.0, Alpha(1.0));
  const auto target = StepDistribution::pareto(2.0);
  for (double t : {-4.0, -1.0, 0.5, 1.0, 2.0, 9.0}) {
    CHECK(law.cdf(t) == doctest::Approx(target.cdf(t)).epsilon(1e-15));
  }
  RngStream rng(99, 0);
  std::vector<double> samples(50000);
  for (auto& s : samples) s = law.sample(rng);
  const EmpiricalCDF emp(std::move(samples));
  CHECK(ks_distance(emp, [&](double t) { return target.cdf(t); }) <
        ks_critical_1pct(emp.count()));
}

TEST_CASE("kernel interval mass") {
  CHECK(kernel_cdf_h(1.0, 2.0, 3.0, Alpha(1.0)) == doctest::Approx(7.0 / 18.0).epsilon(1e-15));
  CHECK(kernel_cdf_h(1.0, 2.0, 2.0, Alpha(1.0)) == 0.0);  // |y| = t excluded
  CHECK(kernel_cdf_h(0.0, 1.0, 2.0, Alpha(1.0)) == 0.5);
  CHECK(kernel_cdf_h(0.0, 0.0, 2.0, Alpha(1.0)) == 0.0);  // identity law, open interval
  CHECK(kernel_cdf_h(1.0, 2.0, -1.0, Alpha(1.0)) == 0.0);
  CHECK(kernel_cdf_h(-1.0, 2.0, 3.0, Alpha(1.0)) ==
        kernel_cdf_h(1.0, 2.0, 3.0, Alpha(1.0)));  // sign-symmetric
}

TEST_CASE("kernel mass is dilation equivariant") {
  for (double av : {0.5, 1.0, 2.0}) {
    for (double a : {0.5, 2.0, 7.3}) {
      for (double x : {0.0, 0.5, 1.0}) {
        for (double y : {0.4, 1.0, 2.0}) {
          for (double t : {0.5, 1.5, 3.0}) {
            REQUIRE(std::abs(kernel_cdf_h(a * x, a * y, a * t, Alpha(av)) -
                             kernel_cdf_h(x, y, t, Alpha(av))) < 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("one-step transition mass") {
  const auto d = StepDistribution::two_point(1.0);
  const Alpha a1(1.0);
  CHECK(transition_cdf(0.0, d, 2.0, a1) == doctest::Approx(0.5));  // from 0: the step law itself
  CHECK(transition_cdf(1.0, d, 2.0, a1) == doctest::Approx(0.375));
  CHECK(transition_cdf(2.0, d, 2.0, a1) == 0.0);  // |x| >= t
  CHECK(transition_cdf(-3.0, d, 2.0, a1) == 0.0);
  // integrating the kernel mass over the step law reproduces it (uniform
  // case, alpha = 1); the indicator is folded into the integration domain so
  // the oracle integrand stays continuous
  const auto uni = StepDistribution::uniform();
  for (double x : {0.0, 0.4, -0.8}) {
    for (double t : {0.7, 1.3, 2.5}) {
      double direct = 0.0;
      if (std::abs(x) < t) {
        const double b = std::min(1.0, t);
        direct = oracle::simpson(
            [&](double y) { return 0.25 * (1.0 - std::abs(x * y) / (t * t)); }, -b, b, 1 << 13);
      }
      CHECK(transition_cdf(x, uni, t, a1) == doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("power cdf: n = 1 is the base cdf") {
  const ConvolutionPowerLaw law{StepDistribution::mixture(0.5), 1, Alpha(0.8)};
  for (double t : {-2.0, -0.5, 0.3, 1.0, 4.0}) {
    CHECK(power_cdf(law, t) == StepDistribution::mixture(0.5).cdf(t));
  }
}

TEST_CASE("power cdf: squared unit atoms give the pareto law") {
  for (double av : {0.5, 1.0, 2.0}) {
    const ConvolutionPowerLaw law{StepDistribution::two_point(1.0), 2, Alpha(av)};
    const auto target = StepDistribution::pareto(2.0 * av);
    for (int j = 1; j <= 100; ++j) {
      const double t = 0.05 * j;
      REQUIRE(std::abs(power_cdf(law, t) - target.cdf(t)) < 1e-12);
      REQUIRE(std::abs(power_cdf(law, -t) - target.cdf(-t)) < 1e-12);
    }
  }
}

TEST_CASE("power cdf: third power against the density oracle") {
  // mass above t of the 3-fold power of the unit two-point law, alpha = 1
  const ConvolutionPowerLaw law{StepDistribution::two_point(1.0), 3, Alpha(1.0)};
  CHECK(power_cdf(law, 2.0) == doctest::Approx(0.75).epsilon(1e-12));  // frozen from the oracle
  for (double t : {1.5, 2.0, 4.0}) {
    const double tail = oracle::simpson_tail(
        [&](double s) { return example_two_point_density(3, Alpha(1.0), s); }, t, 1 << 14);
    CHECK(power_cdf(law, t) == doctest::Approx(1.0 - tail).epsilon(1e-8));
  }
}

TEST_CASE("power cdf is a symmetric distribution function") {
  const std::vector<ConvolutionPowerLaw> laws = {
      {StepDistribution::two_point(1.0), 2, Alpha(0.8)},
      {StepDistribution::uniform(), 5, Alpha(0.8)},
      {StepDistribution::mixture(0.5), 3, Alpha(0.8)},
      {StepDistribution::pareto(1.6), 4, Alpha(0.8)},
  };
  for (const auto& law : laws) {
    double prev = -1.0;
    for (int j = 1; j <= 500; ++j) {
      const double t = 0.02 * j;
      const double f = law.cdf(t);
      REQUIRE(f >= prev - 1e-12);
      REQUIRE(std::abs(f + law.cdf(-t) - 1.0) < 1e-12);
      prev = f;
    }
  }
}

TEST_CASE("example cdf parameter validation") {
  CHECK_THROWS_AS((void)example_cdf(ExampleFamily::mixture, 2, Alpha(0.5), 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)example_cdf(ExampleFamily::mixture, 2, Alpha(0.5), 1.2, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)example_cdf(ExampleFamily::mixture, 2, Alpha(0.5), 0.5, 1.0),
                  std::invalid_argument);  // alpha == p
  CHECK_THROWS_AS((void)example_cdf(ExampleFamily::pareto, 2, Alpha(1.2), 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)example_cdf(ExampleFamily::uniform, 0, Alpha(1.0), 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)example_two_point_density(1, Alpha(1.0), 2.0), std::invalid_argument);
}

TEST_CASE("example cdf: order one returns the base laws") {
  const Alpha a(0.8);
  for (double t : {-3.0, -1.0, -0.2, 0.0, 0.4, 1.0, 1.7, 5.0}) {
    CHECK(example_cdf(ExampleFamily::two_point, 1, a, 0.0, t) ==
          doctest::Approx(StepDistribution::two_point(1.0).cdf(t)).epsilon(1e-14));
    CHECK(example_cdf(ExampleFamily::uniform, 1, a, 0.0, t) ==
          doctest::Approx(StepDistribution::uniform().cdf(t)).epsilon(1e-14));
    CHECK(example_cdf(ExampleFamily::mixture, 1, a, 0.5, t) ==
          doctest::Approx(StepDistribution::mixture(0.5).cdf(t)).epsilon(1e-14));
    CHECK(example_cdf(ExampleFamily::pareto, 1, a, 0.0, t) ==
          doctest::Approx(StepDistribution::pareto(1.6).cdf(t)).epsilon(1e-14));
  }
}

TEST_CASE("example cdf cross identities") {
  // pareto power n equals two-point power 2n
  for (int n : {1, 2, 3, 5}) {
    for (double t : {0.4, 1.0, 1.5, 3.0, 10.0}) {
      REQUIRE(std::abs(example_cdf(ExampleFamily::pareto, n, Alpha(0.6), 0.0, t) -
                       example_cdf(ExampleFamily::two_point, 2 * n, Alpha(0.6), 0.0, t)) < 1e-12);
    }
  }
  // mixture at p = 1 degenerates to the two-point family
  for (int n : {2, 5}) {
    for (double t : {0.4, 1.2, 2.0, 6.0}) {
      REQUIRE(std::abs(example_cdf(ExampleFamily::mixture, n, Alpha(0.7), 1.0, t) -
                       example_cdf(ExampleFamily::two_point, n, Alpha(0.7), 0.0, t)) < 1e-9);
    }
  }
}

TEST_CASE("example densities normalize to one") {
  const double mass2 =
      2.0 * oracle::simpson_tail(
                [&](double t) { return example_two_point_density(5, Alpha(0.7), t); }, 1.0,
                1 << 14);
  CHECK(mass2 == doctest::Approx(1.0).epsilon(1e-6));
  const double mass4 =
      2.0 * oracle::simpson_tail(
                [&](double t) { return example_pareto_density(3, Alpha(0.8), t); }, 1.0, 1 << 14);
  CHECK(mass4 == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("example cdfs agree with the generic transform-power route") {
  struct Row {
    ExampleFamily family;
    StepDistribution base;
    double alpha;
    double p;
    int n;
  };
  const Row rows[] = {
      {ExampleFamily::uniform, StepDistribution::uniform(), 0.5, 0.0, 3},
      {ExampleFamily::uniform, StepDistribution::uniform(), 1.0, 0.0, 7},
      {ExampleFamily::two_point, StepDistribution::two_point(1.0), 0.5, 0.0, 5},
      {ExampleFamily::mixture, StepDistribution::mixture(0.6), 0.9, 0.6, 4},
      {ExampleFamily::pareto, StepDistribution::pareto(1.6), 0.8, 0.0, 2},
  };
  for (const auto& row : rows) {
    const ConvolutionPowerLaw law{row.base, row.n, Alpha(row.alpha)};
    for (int j = 1; j <= 60; ++j) {
      const double t = 0.1 * j;
      REQUIRE(std::abs(example_cdf(row.family, row.n, Alpha(row.alpha), row.p, t) -
                       power_cdf(law, t)) < 1e-10);
    }
  }
}

TEST_CASE("stable limit cdf") {
  const double expected = 0.5 * (2.0 + std::exp(1.0)) * std::exp(-1.0);
  CHECK(stable_limit_cdf(1.0, Alpha(1.0)) == doctest::Approx(expected).epsilon(1e-15));
  // far tail: 1 - F(t) = t^-2alpha / 4 + O(t^-3alpha)
  CHECK(stable_limit_cdf(1e4, Alpha(1.0)) >= 1.0 - 2.51e-9);
  CHECK(stable_limit_cdf(1e5, Alpha(1.0)) >= 1.0 - 1e-9);
  CHECK(stable_limit_cdf(0.0, Alpha(2.0)) == 0.5);
  for (double t : {0.3, 1.0, 2.7}) {
    CHECK(std::abs(stable_limit_cdf(t, Alpha(0.7)) + stable_limit_cdf(-t, Alpha(0.7)) - 1.0) <
          1e-15);
  }
  // the limit law is recovered by inverting its own transform
  for (double av : {0.5, 1.0, 2.0}) {
    TransformFn tf{Alpha(av), [av](double u) { return std::exp(-std::pow(std::abs(u), av)); },
                   [av](double t) {
                     const double xv = std::pow(t, -av);
                     return av * std::pow(t, -av - 1.0) * std::exp(-xv);
                   }};
    for (int j = 1; j <= 50; ++j) {
      const double t = 0.08 * j;
      REQUIRE(std::abs(cdf_from_transform(tf, t) - stable_limit_cdf(t, Alpha(av))) < 1e-10);
    }
  }
}

TEST_CASE("rescaled transform powers approach the stable limit") {
  for (int n : {100, 1000}) {
    for (double av : {0.5, 1.0, 2.0}) {
      const double cn = std::pow(static_cast<double>(n), -1.0 / av);
      double worst = 0.0;
      for (int j = 0; j <= 300; ++j) {
        const double t = 0.01 * j;
        const double lhs = std::pow(psi(Alpha(av), cn * t), n);
        const double rhs = std::exp(-std::pow(t, av));
        worst = std::max(worst, std::abs(lhs - rhs));
      }
      CHECK(worst <= 2.0 / n);
    }
  }
}
