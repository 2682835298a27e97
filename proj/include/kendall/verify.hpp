#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace kendall::verify {

enum class ErrorMetric { abs, rel, ks, z_score };

const char* metric_name(ErrorMetric m);

// One reconciliation of an analytic value against an estimate (Monte Carlo,
// quadrature, or a second closed form). Reproducible from the recorded seed
// and sample size within one build.
struct VerificationReport {
  std::string check_id;
  std::string suite;
  double analytic = 0.0;
  double estimate = 0.0;
  double error = 0.0;
  ErrorMetric metric = ErrorMetric::abs;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t sample_size = 0;
};

std::string report_to_json(const VerificationReport& report);
std::string reports_to_json(const std::vector<VerificationReport>& reports);

struct CheckContext {
  std::uint64_t seed = 0;  // per-check seed, already mixed with the master
  double scale = 1.0;      // multiplies Monte Carlo sample sizes
};

struct Check {
  std::string id;
  std::string suite;
  std::vector<std::string> covers;  // operation names the check exercises
  std::function<std::vector<VerificationReport>(const CheckContext&)> run;
};

const std::vector<Check>& check_registry();
std::vector<std::string> suite_names();

// Operations with a source formula that the registry must cover, and the
// ones no check claims. An empty uncovered list is asserted in the tests.
const std::vector<std::string>& tracked_operations();
std::vector<std::string> registry_uncovered();

// Run every check of the suite ("all" for the union). Sample sizes scale
// with scale; statistical tolerances follow automatically through 1/sqrt(N).
// Reports come back sorted by check id regardless of execution order.
std::vector<VerificationReport> run_suite(const std::string& suite_id, std::uint64_t master_seed,
                                          double scale);

// Run one check by id (exact match).
std::vector<VerificationReport> run_check(const std::string& check_id, std::uint64_t master_seed,
                                          double scale);

bool all_passed(const std::vector<VerificationReport>& reports);

std::uint64_t check_seed(const std::string& check_id, std::uint64_t master_seed);

}  // namespace kendall::verify
