#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "asoc/baselines.hpp"
#include "asoc/benchmarks.hpp"

using namespace asoc;
using namespace asoc::baselines;

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

void check_non_increasing(const BaselineResult& r) {
  double previous = r.trace.initial_best_f;
  for (const auto& rec : r.trace.records) {
    CHECK(rec.best_f <= previous);
    previous = rec.best_f;
  }
  CHECK(r.best_value == previous);
}

bool same_result(const BaselineResult& a, const BaselineResult& b) {
  if (a.best_value != b.best_value || a.trace.records.size() != b.trace.records.size()) return false;
  for (std::size_t i = 0; i < a.trace.records.size(); ++i) {
    if (a.trace.records[i].best_f != b.trace.records[i].best_f ||
        a.trace.records[i].pool_mean_f != b.trace.records[i].pool_mean_f) {
      return false;
    }
  }
  return (a.best_point.array() == b.best_point.array()).all();
}

}  // namespace

TEST_CASE("sa temperature schedule") {
  CHECK(sa_temperature(10.0, 0) == doctest::Approx(10.0).epsilon(1e-15));
  double previous = sa_temperature(10.0, 0);
  for (std::size_t k = 1; k < 5000; ++k) {
    const double t = sa_temperature(10.0, k);
    CHECK(t > 0.0);
    CHECK(t < previous);
    previous = t;
  }
  CHECK(sa_temperature(10.0, 1999) == doctest::Approx(10.0 / std::log(1999 + std::exp(1.0))));
}

TEST_CASE("metropolis acceptance frequency") {
  Rng downhill(1);
  CHECK(metropolis_accept(0.0, 1.0, downhill));
  CHECK(metropolis_accept(-5.0, 1e-300, downhill));
  for (auto [delta, temperature] : {std::pair{1.0, 1.0}, {0.5, 2.0}, {3.0, 1.5}, {0.05, 0.1}}) {
    Rng rng(42);
    int accepted = 0;
    for (int i = 0; i < 10000; ++i) accepted += metropolis_accept(delta, temperature, rng) ? 1 : 0;
    CHECK(std::abs(accepted / 10000.0 - std::exp(-delta / temperature)) <= 0.02);
  }
}

TEST_CASE("config validation") {
  SaConfig sa;
  sa.initial_temperature = 0;
  CHECK_THROWS_AS(sa.validate(), std::invalid_argument);
  sa = {};
  sa.samples_per_temperature = 0;
  CHECK_THROWS_AS(sa.validate(), std::invalid_argument);
  GaConfig ga;
  ga.mutation_probability = 1.5;
  CHECK_THROWS_AS(ga.validate(), std::invalid_argument);
  ga = {};
  ga.population_size = 0;
  CHECK_THROWS_AS(ga.validate(), std::invalid_argument);
}

TEST_CASE("sa on a constant objective") {
  const Objective flat("flat", BoxDomain::cube(2, -1, 1), [](const Vector&) { return 3.5; });
  SaConfig cfg;
  cfg.outer_iterations = 20;
  const auto r = sa_run(flat, cfg);
  CHECK(r.best_value == 3.5);
  CHECK(r.trace.records.size() == 20);
  for (const auto& rec : r.trace.records) {
    CHECK(rec.best_f == 3.5);
    CHECK(rec.pool_mean_f == 3.5);
  }
}

TEST_CASE("sa greedy limit") {
  const auto fn = bench::make_function("sphere", 2);
  SaConfig cfg;
  cfg.initial_temperature = 1e-12;
  cfg.outer_iterations = 200;
  cfg.seed = 3;
  const auto r = sa_run(fn.objective(), cfg);
  check_non_increasing(r);
  // with essentially no uphill moves the current state is the best state
  for (const auto& rec : r.trace.records) CHECK(rec.pool_mean_f >= rec.best_f * (1 - 1e-12));
  CHECK(r.best_value < 1e-3);
}

TEST_CASE("sa trace accounting and containment") {
  const auto fn = bench::make_function("mccormick");
  SaConfig cfg;
  cfg.outer_iterations = 100;
  cfg.seed = 11;
  const auto r = sa_run(fn.objective(), cfg);
  check_non_increasing(r);
  CHECK(fn.domain().contains(r.best_point));
  for (std::size_t i = 0; i < r.trace.records.size(); ++i) {
    CHECK(r.trace.records[i].iteration == i + 1);
    CHECK(r.trace.records[i].evaluations == 1 + (i + 1) * cfg.samples_per_temperature);
    CHECK(fn.domain().contains(r.trace.records[i].best_x));
  }
}

TEST_CASE("sa on Booth, median over 20 seeds") {
  const auto fn = bench::make_function("booth");
  std::vector<double> finals;
  for (std::uint64_t s = 0; s < 20; ++s) {
    SaConfig cfg;
    cfg.seed = Rng::derive_seed(2024, s);
    finals.push_back(sa_run(fn.objective(), cfg).best_value);
  }
  CHECK(median(finals) <= 0.05);
}

TEST_CASE("ga without variation only reshuffles") {
  const auto fn = bench::make_function("rosenbrock", 3);
  GaConfig cfg;
  cfg.crossover_probability = 0;
  cfg.mutation_probability = 0;
  cfg.generations = 100;
  cfg.seed = 8;
  const auto r = ga_run(fn.objective(), cfg);
  check_non_increasing(r);
  // no new genomes appear, so the initial best cannot be improved on
  CHECK(r.best_value == r.trace.initial_best_f);
}

TEST_CASE("ga elitism, containment and accounting") {
  const auto fn = bench::make_function("eggholder");
  GaConfig cfg;
  cfg.generations = 200;
  cfg.seed = 4;
  const auto r = ga_run(fn.objective(), cfg);
  check_non_increasing(r);
  CHECK(fn.domain().contains(r.best_point));
  CHECK(fn.evaluate(r.best_point) == r.best_value);
  for (std::size_t i = 0; i < r.trace.records.size(); ++i) {
    CHECK(r.trace.records[i].evaluations == (i + 2) * cfg.population_size);
    CHECK(fn.domain().contains(r.trace.records[i].best_x));
  }
}

TEST_CASE("ga on Sphere n=10 and Goldstein-Price, medians over 20 seeds") {
  const auto sphere = bench::make_function("sphere", 10);
  const auto gp = bench::make_function("goldstein-price");
  std::vector<double> sphere_finals, gp_finals;
  for (std::uint64_t s = 0; s < 20; ++s) {
    GaConfig cfg;
    cfg.seed = Rng::derive_seed(7, s);
    cfg.generations = 500;
    sphere_finals.push_back(ga_run(sphere.objective(), cfg).best_value);
    cfg.generations = 2000;
    gp_finals.push_back(ga_run(gp.objective(), cfg).best_value);
  }
  CHECK(median(sphere_finals) <= 0.05);
  CHECK(median(gp_finals) <= 3.01);
}

TEST_CASE("baselines are deterministic under a fixed seed") {
  const auto fn = bench::make_function("holder-table");
  SaConfig sa;
  sa.outer_iterations = 50;
  sa.seed = 5;
  CHECK(same_result(sa_run(fn.objective(), sa), sa_run(fn.objective(), sa)));
  GaConfig ga;
  ga.generations = 50;
  ga.seed = 5;
  CHECK(same_result(ga_run(fn.objective(), ga), ga_run(fn.objective(), ga)));
  ga.seed = 6;
  GaConfig other = ga;
  other.seed = 5;
  CHECK_FALSE(same_result(ga_run(fn.objective(), ga), ga_run(fn.objective(), other)));
}

TEST_CASE("evaluation errors propagate") {
  const Objective bad("bad", BoxDomain::cube(1, -1, 1), [](const Vector& x) { return x(0) > 0.0 ? NAN : 0.0; });
  SaConfig sa;
  sa.outer_iterations = 100;
  CHECK_THROWS_AS(sa_run(bad, sa), EvaluationError);
  GaConfig ga;
  ga.generations = 10;
  CHECK_THROWS_AS(ga_run(bad, ga), EvaluationError);
}
