#include "asoc/optimizer.hpp"

#include <algorithm>
#include <iostream>
#include <numeric>
#include <utility>

namespace asoc {

void AsocConfig::validate() const {
  if (pool_size < 2) throw std::invalid_argument("AsocConfig: pool_size must be at least 2");
  if (max_iters < 1) throw std::invalid_argument("AsocConfig: max_iters must be positive");
  if (!(regularization >= 0.0)) throw std::invalid_argument("AsocConfig: regularization must be >= 0");
  if (!(cov_floor >= 0.0)) throw std::invalid_argument("AsocConfig: cov_floor must be >= 0");
  if (!(stop_tolerance >= 0.0)) throw std::invalid_argument("AsocConfig: stop_tolerance must be >= 0");
  if (stop_patience < 1) throw std::invalid_argument("AsocConfig: stop_patience must be positive");
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::converged: return "converged";
    case RunStatus::max_iters: return "max_iters";
    case RunStatus::degenerate_halt: return "degenerate_halt";
  }
  return "unknown";
}

double Population::mean_value() const {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

void sort_population(Population& pop) {
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pop.values[a] < pop.values[b]; });
  std::vector<Vector> points;
  std::vector<double> values;
  points.reserve(order.size());
  values.reserve(order.size());
  for (std::size_t i : order) {
    points.push_back(std::move(pop.points[i]));
    values.push_back(pop.values[i]);
  }
  pop.points = std::move(points);
  pop.values = std::move(values);
}

namespace {

void check_dimension(const Objective& objective, std::size_t n) {
  if (objective.dimension() != n) {
    throw std::invalid_argument("objective " + objective.name() + " has dimension " +
                                std::to_string(objective.dimension()) + ", population has " + std::to_string(n));
  }
}

IterationRecord make_record(const Population& pop, std::size_t iteration, bool skipped) {
  IterationRecord rec;
  rec.iteration = iteration;
  rec.best_f = pop.best_value();
  rec.best_x = pop.best_point();
  rec.pool_mean_f = pop.mean_value();
  rec.evaluations = pop.evaluation_count;
  rec.degenerate_skip = skipped;
  return rec;
}

RunTrace iterate(Population& pop, const Objective& objective, const AsocConfig& config, Rng& rng,
                 bool early_stop) {
  RunTrace trace;
  trace.initial_best_f = pop.best_value();
  trace.records.reserve(config.max_iters);

  // best_history[k] is the best value after k iterations of this segment.
  std::vector<double> best_history{pop.best_value()};
  best_history.reserve(config.max_iters + 1);
  std::size_t consecutive_skips = 0;

  for (std::size_t it = 1; it <= config.max_iters; ++it) {
    IterationRecord rec = step(pop, objective, config, rng);
    rec.iteration = it;
    consecutive_skips = rec.degenerate_skip ? consecutive_skips + 1 : 0;
    best_history.push_back(rec.best_f);
    trace.records.push_back(std::move(rec));

    if (!early_stop) continue;
    if (consecutive_skips >= config.stop_patience) {
      trace.status = RunStatus::degenerate_halt;
      return trace;
    }
    if (it >= config.stop_patience &&
        best_history[it - config.stop_patience] - best_history[it] < config.stop_tolerance) {
      trace.status = RunStatus::converged;
      return trace;
    }
  }
  trace.status = RunStatus::max_iters;
  return trace;
}

}  // namespace

Population initialize(const Objective& objective, const AsocConfig& config, Rng& rng) {
  config.validate();
  const std::size_t n = objective.dimension();
  if (config.pool_size < n + 2) {
    std::clog << "asoc: pool_size " << config.pool_size << " is below n+2 = " << n + 2
              << "; the pair covariance will be rank deficient\n";
  }
  const std::size_t draws = 2 * config.pool_size;
  Population pool;
  pool.points.reserve(draws);
  pool.values.reserve(draws);
  for (std::size_t i = 0; i < draws; ++i) pool.points.push_back(objective.domain().sample_uniform(rng));
  for (const auto& p : pool.points) pool.values.push_back(objective.evaluate(p));
  pool.evaluation_count = draws;

  sort_population(pool);
  pool.points.resize(config.pool_size);
  pool.values.resize(config.pool_size);
  return pool;
}

IterationRecord step(Population& pop, const Objective& objective, const AsocConfig& config, Rng& rng) {
  if (pop.size() < 2) throw std::invalid_argument("step: population needs at least 2 points");
  check_dimension(objective, pop.dimension());

  const PairGaussianModel model = fit_pair_moments(pop.points);
  ConditionalGaussian target = condition_on_best(model, pop.best_point(), config.regularization);
  if (config.cov_floor > 0.0) target = add_covariance_floor(std::move(target), config.cov_floor);
  if (target.degenerate) return make_record(pop, 0, true);

  const std::size_t count = pop.size();
  std::vector<Vector> candidates = sample_mvn(target, count, rng);
  std::vector<double> values;
  values.reserve(count);
  for (auto& c : candidates) {
    c = objective.domain().clamp(c);
    values.push_back(objective.evaluate(c));
  }

  Population merged;
  merged.points = pop.points;
  merged.values = pop.values;
  merged.points.insert(merged.points.end(), std::make_move_iterator(candidates.begin()),
                       std::make_move_iterator(candidates.end()));
  merged.values.insert(merged.values.end(), values.begin(), values.end());
  sort_population(merged);
  merged.points.resize(count);
  merged.values.resize(count);
  merged.evaluation_count = pop.evaluation_count + count;
  pop = std::move(merged);
  return make_record(pop, 0, false);
}

RunResult run(const Objective& objective, const AsocConfig& config) {
  Rng rng(config.seed);
  return run(objective, config, rng);
}

RunResult run(const Objective& objective, const AsocConfig& config, Rng& rng) {
  RunResult result;
  result.population = initialize(objective, config, rng);
  result.trace = iterate(result.population, objective, config, rng, config.early_stop);
  return result;
}

RunResult continue_with(Population pop, const Objective& objective, const AsocConfig& config, Rng& rng) {
  config.validate();
  if (pop.size() < 2) throw std::invalid_argument("continue_with: population needs at least 2 points");
  check_dimension(objective, pop.dimension());

  std::vector<double> values;
  values.reserve(pop.size());
  for (auto& p : pop.points) {
    p = objective.domain().clamp(p);
    values.push_back(objective.evaluate(p));
  }
  pop.values = std::move(values);
  pop.evaluation_count += pop.size();
  sort_population(pop);

  RunResult result;
  result.trace = iterate(pop, objective, config, rng, false);
  result.population = std::move(pop);
  return result;
}

}  // namespace asoc
