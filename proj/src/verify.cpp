#include "kendall/verify.hpp"

#include <algorithm>
#include <future>
#include <semaphore>
#include <thread>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace kendall::verify {

const char* metric_name(ErrorMetric m) {
  switch (m) {
    case ErrorMetric::abs:
      return "abs";
    case ErrorMetric::rel:
      return "rel";
    case ErrorMetric::ks:
      return "ks";
    case ErrorMetric::z_score:
      return "z-score";
  }
  return "unknown";
}

namespace {

nlohmann::ordered_json report_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["check_id"] = r.check_id;
  j["suite"] = r.suite;
  j["analytic"] = r.analytic;
  j["estimate"] = r.estimate;
  j["error"] = r.error;
  j["error_metric"] = metric_name(r.metric);
  j["tolerance"] = r.tolerance;
  j["verdict"] = r.pass ? "pass" : "fail";
  j["runtime_ms"] = r.runtime_ms;
  j["seed"] = r.seed;
  j["sample_size"] = r.sample_size;
  return j;
}

}  // namespace

std::string report_to_json(const VerificationReport& report) {
  return report_json(report).dump(2);
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr.dump(2);
}

std::uint64_t check_seed(const std::string& check_id, std::uint64_t master_seed) {
  // FNV-1a over the id, mixed with the master seed
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : check_id) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h ^ master_seed;
}

std::vector<std::string> suite_names() {
  return {"exact-identities", "quadrature-identities", "mc-laws"};
}

std::vector<std::string> registry_uncovered() {
  std::set<std::string> covered;
  for (const auto& check : check_registry()) {
    covered.insert(check.covers.begin(), check.covers.end());
  }
  std::vector<std::string> missing;
  for (const auto& op : tracked_operations()) {
    if (covered.find(op) == covered.end()) missing.push_back(op);
  }
  return missing;
}

std::vector<VerificationReport> run_suite(const std::string& suite_id, std::uint64_t master_seed,
                                          double scale) {
  const auto names = suite_names();
  if (suite_id != "all" && std::find(names.begin(), names.end(), suite_id) == names.end()) {
    throw std::invalid_argument("unknown suite '" + suite_id + "'");
  }
  std::vector<const Check*> selected;
  for (const auto& check : check_registry()) {
    if (suite_id == "all" || check.suite == suite_id) selected.push_back(&check);
  }

  // checks are seeded independently, so they can fan out across workers; the
  // semaphore keeps the outer fan-out from stacking on top of the threads the
  // simulation batches already spawn, and the final sort makes the collection
  // order immaterial
  static std::counting_semaphore<1024> gate(
      std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::future<std::vector<VerificationReport>>> futures;
  futures.reserve(selected.size());
  for (const Check* check : selected) {
    CheckContext ctx{check_seed(check->id, master_seed), scale};
    futures.push_back(std::async(std::launch::async, [check, ctx] {
      gate.acquire();
      try {
        auto result = check->run(ctx);
        gate.release();
        return result;
      } catch (...) {
        gate.release();
        throw;
      }
    }));
  }
  std::vector<VerificationReport> reports;
  for (auto& future : futures) {
    auto sub = future.get();
    reports.insert(reports.end(), sub.begin(), sub.end());
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const VerificationReport& a, const VerificationReport& b) {
                     return a.check_id < b.check_id;
                   });
  return reports;
}

std::vector<VerificationReport> run_check(const std::string& check_id, std::uint64_t master_seed,
                                          double scale) {
  for (const auto& check : check_registry()) {
    if (check.id == check_id) {
      CheckContext ctx{check_seed(check.id, master_seed), scale};
      return check.run(ctx);
    }
  }
  throw std::invalid_argument("unknown check '" + check_id + "'");
}

bool all_passed(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const VerificationReport& r) { return r.pass; });
}

}  // namespace kendall::verify
