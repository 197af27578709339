#pragma once

#include <cstddef>
#include <cstdint>

#include "asoc/optimizer.hpp"
#include "asoc/problem.hpp"
#include "asoc/rng.hpp"

namespace asoc::baselines {

struct SaConfig {
  std::size_t outer_iterations = 2000;
  std::size_t samples_per_temperature = 50;
  double initial_temperature = 10.0;
  double neighbor_scale = 0.1;  // proposal std as a fraction of the box width
  std::uint64_t seed = 0;

  void validate() const;
};

struct GaConfig {
  std::size_t population_size = 30;
  std::size_t generations = 2000;
  double crossover_probability = 0.9;
  double mutation_probability = 0.05;
  double mutation_scale = 0.1;  // mutation std as a fraction of the box width
  double blend_alpha = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

struct BaselineResult {
  Vector best_point;
  double best_value = 0.0;
  RunTrace trace;
};

/// Logarithmic cooling: T_k = T0 / ln(k + e) for the 0-based outer iteration
/// k, so the first temperature is T0.
double sa_temperature(double initial_temperature, std::size_t outer_iteration);

/// Metropolis rule: downhill (delta <= 0) always, uphill with probability
/// exp(-delta / T). Consumes one uniform draw only for uphill moves.
bool metropolis_accept(double delta, double temperature, Rng& rng);

/// Simulated annealing with samples_per_temperature Gaussian-neighbour moves
/// per temperature. The trace holds the best-ever value after each outer
/// iteration; pool_mean_f is the mean current-state value over that
/// iteration's moves.
BaselineResult sa_run(const Objective& objective, const SaConfig& config);

/// Elitist real-coded GA: tournament-2 selection, BLX-alpha crossover,
/// per-coordinate Gaussian mutation, clamping into the box. Each generation
/// evaluates population_size offspring; the previous best replaces the worst
/// offspring.
BaselineResult ga_run(const Objective& objective, const GaConfig& config);

}  // namespace asoc::baselines
