#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kendall/alpha.hpp"
#include "kendall/rng.hpp"
#include "kendall/step_distribution.hpp"

namespace kendall {

enum class WalkMode {
  kernel,             // one-step law is the point-pair mixture kernel
  recursion,          // max/sign recurrence with mixture-consistent weights
  recursion_literal,  // experiment flag: branch indicators taken verbatim
};

struct WalkConfig {
  StepDistribution dist;
  Alpha alpha;
  int n_steps = 1;
  std::int64_t n_paths = 1;
  WalkMode mode = WalkMode::kernel;
  std::uint64_t master_seed = 0;
  double x0 = 0.0;
  std::vector<int> checkpoints;  // steps whose marginals are always retained
  unsigned max_threads = 0;      // 0 = hardware concurrency
};

// First strictly positive epoch of one path; tau == 0 means no crossing
// within the simulated horizon (min of the empty set).
struct FirstPassageRecord {
  std::uint32_t tau = 0;
  double value = 0.0;
};

struct WalkBatch {
  WalkConfig config;

  // Full trajectories (X_1 .. X_n per path). Left empty when
  // n_paths * n_steps exceeds the storage budget; first-passage records and
  // checkpoint marginals are retained either way.
  std::vector<std::vector<double>> trajectories;

  std::vector<int> checkpoint_steps;
  std::vector<std::vector<double>> checkpoint_values;  // [checkpoint][path]

  std::vector<FirstPassageRecord> up_crossings;  // level 0, one per path

  bool has_trajectories() const { return !trajectories.empty(); }
};

// Full trajectories are kept while n_paths * n_steps stays within this many
// stored values; larger batches retain only records and checkpoints.
inline constexpr std::int64_t kTrajectoryBudget = 10'000'000;

// Hard cap on total simulated steps; exceeding it is a config error.
inline constexpr std::int64_t kPathStepHardCap = 2'000'000'000;

// One transition of the Markov kernel: draw Y ~ dist, set M = max(|x|, |Y|),
// w = (min/max)^alpha; with probability w return M * Theta with Theta
// symmetric pareto(2 alpha), else return +-M with equal probability.
double step_kernel(double x, const StepDistribution& dist, Alpha alpha, RngStream& rng);

// The max/sign recurrence. The Pareto branch is taken with probability
// (m/M)^alpha so the one-step law matches the convolution mixture; the sign
// carried forward is the sign of whichever input attains the max, ties going
// to the fresh step.
double step_recursion(double x, const StepDistribution& dist, Alpha alpha, RngStream& rng);

// Same recurrence with the branch indicators oriented the other way round
// (point mass when xi < rho). Kept as an experiment flag; it does not
// reproduce the convolution mixture.
double step_recursion_literal(double x, const StepDistribution& dist, Alpha alpha, RngStream& rng);

// Simulate n_paths independent trajectories; path i draws from
// RngStream(master_seed, i), so batches are reproducible from the config
// alone and independent of the worker count.
WalkBatch simulate_batch(const WalkConfig& config);

enum class Direction { up, down };

struct PassageEvent {
  int tau;       // 1-based step index
  double value;  // X_tau
};

// First index with X_n > level (up) or X_n < level (down) over a trajectory
// (X_1 .. X_n); nullopt when the level is never crossed.
std::optional<PassageEvent> first_passage(std::span<const double> trajectory, double level,
                                          Direction direction);

}  // namespace kendall
