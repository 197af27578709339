#include "asoc/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace asoc::baselines {

void SaConfig::validate() const {
  if (outer_iterations < 1) throw std::invalid_argument("SaConfig: outer_iterations must be positive");
  if (samples_per_temperature < 1) throw std::invalid_argument("SaConfig: samples_per_temperature must be positive");
  if (!(initial_temperature > 0.0) || !std::isfinite(initial_temperature)) {
    throw std::invalid_argument("SaConfig: initial_temperature must be positive");
  }
  if (!(neighbor_scale > 0.0)) throw std::invalid_argument("SaConfig: neighbor_scale must be positive");
}

void GaConfig::validate() const {
  if (population_size < 2) throw std::invalid_argument("GaConfig: population_size must be at least 2");
  if (generations < 1) throw std::invalid_argument("GaConfig: generations must be positive");
  auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!probability(crossover_probability)) throw std::invalid_argument("GaConfig: crossover_probability not in [0,1]");
  if (!probability(mutation_probability)) throw std::invalid_argument("GaConfig: mutation_probability not in [0,1]");
  if (!(mutation_scale > 0.0)) throw std::invalid_argument("GaConfig: mutation_scale must be positive");
  if (!(blend_alpha >= 0.0)) throw std::invalid_argument("GaConfig: blend_alpha must be >= 0");
}

double sa_temperature(double initial_temperature, std::size_t outer_iteration) {
  return initial_temperature / std::log(static_cast<double>(outer_iteration) + std::numbers::e);
}

bool metropolis_accept(double delta, double temperature, Rng& rng) {
  if (delta <= 0.0) return true;
  return rng.uniform() < std::exp(-delta / temperature);
}

BaselineResult sa_run(const Objective& objective, const SaConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const BoxDomain& box = objective.domain();
  const Vector step_std = config.neighbor_scale * box.width();
  const auto n = static_cast<Eigen::Index>(objective.dimension());

  Vector current = box.sample_uniform(rng);
  double current_f = objective.evaluate(current);
  std::uint64_t evaluations = 1;

  BaselineResult result;
  result.best_point = current;
  result.best_value = current_f;
  result.trace.initial_best_f = current_f;
  result.trace.records.reserve(config.outer_iterations);

  Vector proposal(n);
  for (std::size_t k = 0; k < config.outer_iterations; ++k) {
    const double temperature = sa_temperature(config.initial_temperature, k);
    double state_sum = 0.0;
    for (std::size_t s = 0; s < config.samples_per_temperature; ++s) {
      for (Eigen::Index i = 0; i < n; ++i) proposal(i) = current(i) + step_std(i) * rng.normal();
      proposal = box.clamp(proposal);
      const double f = objective.evaluate(proposal);
      ++evaluations;
      if (metropolis_accept(f - current_f, temperature, rng)) {
        current = proposal;
        current_f = f;
      }
      if (current_f < result.best_value) {
        result.best_value = current_f;
        result.best_point = current;
      }
      state_sum += current_f;
    }
    IterationRecord rec;
    rec.iteration = k + 1;
    rec.best_f = result.best_value;
    rec.best_x = result.best_point;
    rec.pool_mean_f = state_sum / static_cast<double>(config.samples_per_temperature);
    rec.evaluations = evaluations;
    result.trace.records.push_back(std::move(rec));
  }
  result.trace.status = RunStatus::max_iters;
  return result;
}

namespace {

struct Individual {
  Vector genome;
  double fitness = 0.0;
};

std::size_t tournament(const std::vector<Individual>& pop, Rng& rng) {
  const std::size_t a = rng.below(pop.size());
  const std::size_t b = rng.below(pop.size());
  return pop[b].fitness < pop[a].fitness ? b : a;
}

std::size_t best_index(const std::vector<Individual>& pop) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pop.size(); ++i) {
    if (pop[i].fitness < pop[best].fitness) best = i;
  }
  return best;
}

double mean_fitness(const std::vector<Individual>& pop) {
  double sum = 0.0;
  for (const auto& ind : pop) sum += ind.fitness;
  return sum / static_cast<double>(pop.size());
}

}  // namespace

BaselineResult ga_run(const Objective& objective, const GaConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const BoxDomain& box = objective.domain();
  const Vector mutation_std = config.mutation_scale * box.width();
  const auto n = static_cast<Eigen::Index>(objective.dimension());
  const std::size_t size = config.population_size;

  std::vector<Individual> pop(size);
  for (auto& ind : pop) ind.genome = box.sample_uniform(rng);
  for (auto& ind : pop) ind.fitness = objective.evaluate(ind.genome);
  std::uint64_t evaluations = size;

  BaselineResult result;
  result.trace.initial_best_f = pop[best_index(pop)].fitness;
  result.trace.records.reserve(config.generations);

  std::vector<Individual> offspring;
  offspring.reserve(size + 1);
  for (std::size_t gen = 1; gen <= config.generations; ++gen) {
    const Individual elite = pop[best_index(pop)];
    offspring.clear();
    while (offspring.size() < size) {
      Vector c1 = pop[tournament(pop, rng)].genome;
      Vector c2 = pop[tournament(pop, rng)].genome;
      if (rng.uniform() < config.crossover_probability) {
        for (Eigen::Index i = 0; i < n; ++i) {
          const double lo = std::min(c1(i), c2(i));
          const double hi = std::max(c1(i), c2(i));
          const double spread = config.blend_alpha * (hi - lo);
          const double a = rng.uniform(lo - spread, hi + spread);
          const double b = rng.uniform(lo - spread, hi + spread);
          c1(i) = a;
          c2(i) = b;
        }
      }
      for (Vector* child : {&c1, &c2}) {
        if (offspring.size() >= size) break;
        for (Eigen::Index i = 0; i < n; ++i) {
          if (rng.uniform() < config.mutation_probability) (*child)(i) += mutation_std(i) * rng.normal();
        }
        Individual ind;
        ind.genome = box.clamp(*child);
        ind.fitness = objective.evaluate(ind.genome);
        offspring.push_back(std::move(ind));
      }
    }
    evaluations += size;

    // Elitism: the previous best displaces the worst offspring.
    std::size_t worst = 0;
    for (std::size_t i = 1; i < offspring.size(); ++i) {
      if (offspring[i].fitness > offspring[worst].fitness) worst = i;
    }
    offspring[worst] = elite;
    pop.swap(offspring);

    const Individual& best = pop[best_index(pop)];
    IterationRecord rec;
    rec.iteration = gen;
    rec.best_f = best.fitness;
    rec.best_x = best.genome;
    rec.pool_mean_f = mean_fitness(pop);
    rec.evaluations = evaluations;
    result.trace.records.push_back(std::move(rec));
  }

  const Individual& best = pop[best_index(pop)];
  result.best_point = best.genome;
  result.best_value = best.fitness;
  result.trace.status = RunStatus::max_iters;
  return result;
}

}  // namespace asoc::baselines
