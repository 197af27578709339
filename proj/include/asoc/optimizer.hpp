#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "asoc/linalg.hpp"
#include "asoc/problem.hpp"
#include "asoc/rng.hpp"

namespace asoc {

struct AsocConfig {
  std::size_t pool_size = 30;
  std::size_t max_iters = 2000;
  double regularization = 1e-10;
  // Added to the conditional covariance when positive; 0 keeps the
  // skip-on-collapse behaviour.
  double cov_floor = 0.0;
  double stop_tolerance = 1e-12;
  std::size_t stop_patience = 200;
  std::uint64_t seed = 0;
  // Disables both the convergence and degenerate-halt stops so that a run
  // always lasts max_iters iterations.
  bool early_stop = true;

  /// Throws std::invalid_argument on an unusable configuration.
  void validate() const;
};

/// The sorted pool. values ascend; values[i] is the objective at points[i].
struct Population {
  std::vector<Vector> points;
  std::vector<double> values;
  std::uint64_t evaluation_count = 0;

  std::size_t size() const { return points.size(); }
  std::size_t dimension() const { return points.empty() ? 0 : static_cast<std::size_t>(points.front().size()); }
  double best_value() const { return values.front(); }
  const Vector& best_point() const { return points.front(); }
  double mean_value() const;
};

struct IterationRecord {
  std::size_t iteration = 0;  // 1-based within the segment
  double best_f = 0.0;
  Vector best_x;
  double pool_mean_f = 0.0;
  std::uint64_t evaluations = 0;  // cumulative
  bool degenerate_skip = false;
};

enum class RunStatus { converged, max_iters, degenerate_halt };

std::string to_string(RunStatus status);

struct RunTrace {
  std::vector<IterationRecord> records;
  RunStatus status = RunStatus::max_iters;
  double initial_best_f = 0.0;  // best value of the pool the segment started from

  double final_best_f() const { return records.empty() ? initial_best_f : records.back().best_f; }
};

struct RunResult {
  Population population;
  RunTrace trace;
};

/// Draws 2N uniform points in the box, evaluates them and keeps the best N.
Population initialize(const Objective& objective, const AsocConfig& config, Rng& rng);

/// One generation: fit the pair model, condition on the best point, draw N
/// clamped candidates and keep the best N of old and new. On a degenerate
/// conditional (and cov_floor == 0) the pool is left untouched. `pop` is only
/// modified once every candidate evaluated successfully.
IterationRecord step(Population& pop, const Objective& objective, const AsocConfig& config, Rng& rng);

/// initialize + step until converged, max_iters or degenerate_halt.
RunResult run(const Objective& objective, const AsocConfig& config);

/// Same as run() but continues the caller's random stream.
RunResult run(const Objective& objective, const AsocConfig& config, Rng& rng);

/// Carries `pop` over to `objective`: clamps every point into the new box,
/// re-evaluates, re-sorts, then iterates for max_iters with early stopping
/// disabled.
RunResult continue_with(Population pop, const Objective& objective, const AsocConfig& config, Rng& rng);

/// Stable ascending sort on values (insertion order breaks ties).
void sort_population(Population& pop);

}  // namespace asoc
