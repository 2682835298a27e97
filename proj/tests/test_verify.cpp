#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <json.hpp>

#include "kendall/empirical.hpp"
#include "kendall/rng.hpp"
#include "kendall/step_distribution.hpp"
#include "kendall/verify.hpp"

using namespace kendall;
using namespace kendall::verify;

TEST_CASE("empirical cdf evaluation and quantiles") {
  const EmpiricalCDF emp({3.0, 1.0, 2.0});
  CHECK(emp.count() == 3);
  CHECK(emp(0.5) == 0.0);
  CHECK(emp(1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(emp(2.5) == doctest::Approx(2.0 / 3.0));
  CHECK(emp(3.0) == 1.0);
  CHECK(emp.quantile(0.0) == 1.0);
  CHECK(emp.quantile(0.5) == 2.0);
  CHECK(emp.quantile(1.0) == 3.0);
  CHECK_THROWS_AS(EmpiricalCDF({}), std::invalid_argument);
  CHECK_THROWS_AS((void)emp.quantile(1.5), std::invalid_argument);
}

TEST_CASE("ks distance: single sample at the median is 1/2") {
  const EmpiricalCDF one({0.0});
  CHECK(ks_distance(one, [](double) { return 0.5; }) == 0.5);
}

TEST_CASE("ks distance: a sample against its own law stays under the critical value") {
  RngStream rng(2024, 0);
  std::vector<double> v(100000);
  for (auto& x : v) x = rng.uniform01();
  const EmpiricalCDF emp(std::move(v));
  const double d = ks_distance(emp, [](double t) {
    if (t < 0.0) return 0.0;
    if (t > 1.0) return 1.0;
    return t;
  });
  CHECK(d < ks_critical_1pct(emp.count()));
}

TEST_CASE("ks distance: a deliberately wrong law is rejected loudly") {
  RngStream rng(7, 0);
  const auto two_point = StepDistribution::two_point(1.0);
  std::vector<double> v(20000);
  for (auto& x : v) x = rng.uniform01() * 2.0 - 1.0;  // uniform on [-1, 1]
  const EmpiricalCDF emp(std::move(v));
  const double d = ks_distance(emp, [&](double t) { return two_point.cdf(t); });
  CHECK(d > 0.4);  // the gap approaches 1/2 just below the atom
}

TEST_CASE("ks distance needs the left limits at atoms") {
  RngStream rng(11, 0);
  const auto dist = StepDistribution::two_point(1.0);
  std::vector<double> v(50000);
  for (auto& x : v) x = dist.sample(rng);
  const EmpiricalCDF emp(std::move(v));
  const double honest = ks_distance(
      emp, [&](double t) { return dist.cdf(t); }, [&](double t) { return dist.cdf_left(t); });
  CHECK(honest < ks_critical_1pct(emp.count()));
  // omitting them inflates the lower gap to the atom mass
  const double inflated = ks_distance(emp, [&](double t) { return dist.cdf(t); });
  CHECK(inflated > 0.4);
}

TEST_CASE("two-sample ks") {
  const EmpiricalCDF a({1.0, 2.0, 3.0, 4.0});
  CHECK(two_sample_ks(a, a) == 0.0);
  const EmpiricalCDF b({10.0, 11.0});
  CHECK(two_sample_ks(a, b) == 1.0);
  CHECK(two_sample_ks_critical_1pct(100, 100) ==
        doctest::Approx(1.63 * std::sqrt(0.02)).epsilon(1e-12));
}

TEST_CASE("median of means is robust to a wild block") {
  std::vector<double> v(320, 1.0);
  v[5] = 1e12;  // one corrupted observation
  CHECK(median_of_means(v, 32) == doctest::Approx(1.0));
  std::vector<double> small{3.0};
  CHECK(median_of_means(small, 32) == 3.0);
  CHECK_THROWS_AS((void)median_of_means({}, 4), std::invalid_argument);
}

TEST_CASE("registry covers every tracked operation") {
  const auto missing = registry_uncovered();
  CAPTURE(missing.size());
  for (const auto& op : missing) MESSAGE("uncovered: ", op);
  CHECK(missing.empty());
  CHECK(tracked_operations().size() == 19);
}

TEST_CASE("suites are named and unknown ids are rejected") {
  const auto names = suite_names();
  REQUIRE(names.size() == 3);
  CHECK_THROWS_AS((void)run_suite("nonsense", 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)run_check("nonsense", 1, 1.0), std::invalid_argument);
}

TEST_CASE("exact identities hold and are cheap") {
  const auto reports = run_suite("exact-identities", 12345, 1.0);
  REQUIRE(!reports.empty());
  double total_ms = 0.0;
  for (const auto& r : reports) {
    CAPTURE(r.check_id);
    CHECK(r.pass);
    total_ms = std::max(total_ms, r.runtime_ms);
  }
  CHECK(total_ms < 1000.0);
}

TEST_CASE("quadrature identities hold") {
  const auto reports = run_suite("quadrature-identities", 12345, 1.0);
  REQUIRE(!reports.empty());
  for (const auto& r : reports) {
    CAPTURE(r.check_id);
    CHECK(r.pass);
  }
}

TEST_CASE("monte carlo laws hold at smoke scale") {
  const auto reports = run_suite("mc-laws", 12345, 0.1);
  REQUIRE(!reports.empty());
  for (const auto& r : reports) {
    CAPTURE(r.check_id);
    CHECK(r.pass);
    CHECK(r.sample_size > 0);
  }
}

TEST_CASE("reports are reproducible bit-for-bit from their seed") {
  const auto a = run_check("excursion-prefix-mc", 777, 0.05);
  const auto b = run_check("excursion-prefix-mc", 777, 0.05);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].estimate == b[i].estimate);
    CHECK(a[i].error == b[i].error);
    CHECK(a[i].seed == b[i].seed);
  }
  const auto c = run_check("excursion-prefix-mc", 778, 0.05);
  bool any_diff = false;
  for (std::size_t i = 0; i < std::min(a.size(), c.size()); ++i) {
    any_diff = any_diff || a[i].estimate != c[i].estimate;
  }
  CHECK(any_diff);
}

TEST_CASE("suite reports come back sorted by check id") {
  const auto reports = run_suite("quadrature-identities", 3, 1.0);
  for (std::size_t i = 1; i < reports.size(); ++i) {
    CHECK(reports[i - 1].check_id <= reports[i].check_id);
  }
}

TEST_CASE("report json carries all fields in stable order") {
  VerificationReport r;
  r.check_id = "demo/check";
  r.suite = "exact-identities";
  r.analytic = 1.0;
  r.estimate = 1.25;
  r.error = 0.25;
  r.metric = ErrorMetric::abs;
  r.tolerance = 0.5;
  r.pass = true;
  r.runtime_ms = 12.0;
  r.seed = 99;
  r.sample_size = 1000;

  const auto j = nlohmann::json::parse(report_to_json(r));
  CHECK(j["check_id"] == "demo/check");
  CHECK(j["suite"] == "exact-identities");
  CHECK(j["analytic"] == 1.0);
  CHECK(j["estimate"] == 1.25);
  CHECK(j["error"] == 0.25);
  CHECK(j["error_metric"] == "abs");
  CHECK(j["tolerance"] == 0.5);
  CHECK(j["verdict"] == "pass");
  CHECK(j["seed"] == 99);
  CHECK(j["sample_size"] == 1000);

  // key order is pinned so downstream diffs are stable
  const std::string text = report_to_json(r);
  CHECK(text.find("\"check_id\"") < text.find("\"suite\""));
  CHECK(text.find("\"suite\"") < text.find("\"analytic\""));
  CHECK(text.find("\"verdict\"") < text.find("\"runtime_ms\""));

  const auto arr = nlohmann::json::parse(reports_to_json({r, r}));
  CHECK(arr.is_array());
  CHECK(arr.size() == 2);

  CHECK(all_passed({r}));
  r.pass = false;
  CHECK(!all_passed({r}));
}

TEST_CASE("check seeds mix the id with the master seed") {
  CHECK(check_seed("a", 1) != check_seed("b", 1));
  CHECK(check_seed("a", 1) != check_seed("a", 2));
  CHECK(check_seed("a", 1) == check_seed("a", 1));
}
