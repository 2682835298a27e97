#include "kendall/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace kendall {

double step_kernel(double x, const StepDistribution& dist, Alpha alpha, RngStream& rng) {
  const double y = dist.sample(rng);
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  const double big = std::max(ax, ay);
  if (big == 0.0) return 0.0;
  const double small = std::min(ax, ay);
  const double weight = pow_pos(small / big, alpha.value());
  if (rng.uniform01() < weight) {
    const double magnitude = pareto_magnitude_from_uniform(2.0 * alpha.value(), rng.uniform_open01());
    return big * magnitude * rng.sign();
  }
  return big * rng.sign();
}

namespace {

// Shared body of the two recursion orientations. pareto_when_below selects
// which side of {xi < rho} takes the Pareto factor.
double recursion_step(double x, const StepDistribution& dist, Alpha alpha, RngStream& rng,
                      bool pareto_when_below) {
  const double y = dist.sample(rng);
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  const double big = std::max(ax, ay);
  if (big == 0.0) return 0.0;
  const double small = std::min(ax, ay);
  // sign of the input attaining the max; |x| == |y| goes to the fresh step
  const double r = ax > ay ? (x > 0.0 ? 1.0 : -1.0) : (y >= 0.0 ? 1.0 : -1.0);
  const double rho = pow_pos(small / big, alpha.value());
  const bool below = rng.uniform01() < rho;
  if (below == pareto_when_below) {
    const double theta = pareto_magnitude_from_uniform(2.0 * alpha.value(), rng.uniform_open01()) *
                         rng.sign();
    return big * r * theta;
  }
  return big * r;
}

}  // namespace

double step_recursion(double x, const StepDistribution& dist, Alpha alpha, RngStream& rng) {
  return recursion_step(x, dist, alpha, rng, /*pareto_when_below=*/true);
}

double step_recursion_literal(double x, const StepDistribution& dist, Alpha alpha, RngStream& rng) {
  return recursion_step(x, dist, alpha, rng, /*pareto_when_below=*/false);
}

WalkBatch simulate_batch(const WalkConfig& config) {
  if (config.n_steps < 1) throw std::invalid_argument("walk needs n_steps >= 1");
  if (config.n_paths < 1) throw std::invalid_argument("walk needs n_paths >= 1");
  const std::int64_t total = config.n_paths * static_cast<std::int64_t>(config.n_steps);
  if (total > kPathStepHardCap) {
    throw std::runtime_error("path x step budget exceeded (" + std::to_string(total) + " > " +
                             std::to_string(kPathStepHardCap) + "); no results produced");
  }

  WalkBatch batch{config, {}, {}, {}, {}};
  batch.checkpoint_steps = config.checkpoints;
  std::sort(batch.checkpoint_steps.begin(), batch.checkpoint_steps.end());
  batch.checkpoint_steps.erase(
      std::unique(batch.checkpoint_steps.begin(), batch.checkpoint_steps.end()),
      batch.checkpoint_steps.end());
  for (int step : batch.checkpoint_steps) {
    if (step < 1 || step > config.n_steps) {
      throw std::invalid_argument("checkpoint step " + std::to_string(step) +
                                  " outside [1, n_steps]");
    }
  }

  const std::size_t n_paths = static_cast<std::size_t>(config.n_paths);
  const bool keep_trajectories = total <= kTrajectoryBudget;
  if (keep_trajectories) {
    batch.trajectories.assign(n_paths, std::vector<double>(config.n_steps));
  }
  batch.checkpoint_values.assign(batch.checkpoint_steps.size(), std::vector<double>(n_paths));
  batch.up_crossings.assign(n_paths, FirstPassageRecord{});

  const auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t p = lo; p < hi; ++p) {
      RngStream rng(config.master_seed, p);
      double x = config.x0;
      FirstPassageRecord record{};
      std::size_t next_checkpoint = 0;
      for (int k = 1; k <= config.n_steps; ++k) {
        switch (config.mode) {
          case WalkMode::kernel:
            x = step_kernel(x, config.dist, config.alpha, rng);
            break;
          case WalkMode::recursion:
            x = step_recursion(x, config.dist, config.alpha, rng);
            break;
          case WalkMode::recursion_literal:
            x = step_recursion_literal(x, config.dist, config.alpha, rng);
            break;
        }
        if (keep_trajectories) batch.trajectories[p][static_cast<std::size_t>(k - 1)] = x;
        while (next_checkpoint < batch.checkpoint_steps.size() &&
               batch.checkpoint_steps[next_checkpoint] == k) {
          batch.checkpoint_values[next_checkpoint][p] = x;
          ++next_checkpoint;
        }
        if (record.tau == 0 && x > 0.0) {
          record.tau = static_cast<std::uint32_t>(k);
          record.value = x;
        }
      }
      batch.up_crossings[p] = record;
    }
  };

  unsigned n_threads = config.max_threads != 0 ? config.max_threads
                                               : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(
      std::min<std::size_t>(n_threads, n_paths));
  if (n_threads <= 1) {
    run_range(0, n_paths);
  } else {
    // one stream per path index: the partition cannot change the results
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    const std::size_t chunk = (n_paths + n_threads - 1) / n_threads;
    for (unsigned w = 0; w < n_threads; ++w) {
      const std::size_t lo = static_cast<std::size_t>(w) * chunk;
      const std::size_t hi = std::min(n_paths, lo + chunk);
      if (lo >= hi) break;
      workers.emplace_back(run_range, lo, hi);
    }
    for (auto& worker : workers) worker.join();
  }

  return batch;
}

std::optional<PassageEvent> first_passage(std::span<const double> trajectory, double level,
                                          Direction direction) {
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const double x = trajectory[i];
    if (direction == Direction::up ? x > level : x < level) {
      return PassageEvent{static_cast<int>(i) + 1, x};
    }
  }
  return std::nullopt;
}

}  // namespace kendall
