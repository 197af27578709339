#include "asoc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace asoc::harness {

std::string to_string(Method method) {
  switch (method) {
    case Method::sa: return "sa";
    case Method::ga: return "ga";
    case Method::asoc: return "asoc";
  }
  return "unknown";
}

std::optional<Method> parse_method(const std::string& name) {
  std::string key;
  for (unsigned char c : name) key.push_back(static_cast<char>(std::tolower(c)));
  if (key == "sa") return Method::sa;
  if (key == "ga") return Method::ga;
  if (key == "asoc") return Method::asoc;
  return std::nullopt;
}

std::vector<std::uint64_t> derive_seeds(std::uint64_t master, std::size_t count) {
  std::vector<std::uint64_t> seeds;
  seeds.reserve(count);
  for (std::size_t i = 0; i < count; ++i) seeds.push_back(Rng::derive_seed(master, i));
  return seeds;
}

ExperimentSpec ExperimentSpec::defaults(std::uint64_t master_seed) {
  ExperimentSpec spec;
  for (std::size_t i = 1; i <= bench::catalog_size; ++i) spec.functions.push_back({i, std::nullopt});
  spec.seeds = derive_seeds(master_seed);
  return spec;
}

void ExperimentSpec::validate() const {
  if (checkpoints.empty()) throw std::invalid_argument("experiment: no checkpoints");
  if (checkpoints.front() < 1) throw std::invalid_argument("experiment: checkpoints must be positive");
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= checkpoints[i - 1]) throw std::invalid_argument("experiment: checkpoints must increase");
  }
  if (seeds.empty()) throw std::invalid_argument("experiment: at least one seed is required");
  for (const auto& f : functions) (void)bench::make_function(f.index, f.dimension);
  asoc.validate();
  sa.validate();
  ga.validate();
}

std::size_t CellReport::failures() const {
  return static_cast<std::size_t>(std::count_if(runs.begin(), runs.end(), [](const RunOutcome& r) {
    return r.error.has_value();
  }));
}

namespace {

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

RunOutcome run_one(const bench::BenchmarkFunction& fn, Method method, std::uint64_t seed,
                   const ExperimentSpec& spec) {
  RunOutcome out;
  out.seed = seed;
  const std::size_t horizon = spec.checkpoints.back();
  const Objective objective = fn.objective();
  try {
    auto read_checkpoints = [&](const RunTrace& trace) {
      for (std::size_t cp : spec.checkpoints) {
        const IterationRecord& rec = trace.records.at(cp - 1);
        out.best_at_checkpoint.push_back(rec.best_f);
        out.evaluations_at_checkpoint.push_back(rec.evaluations);
      }
    };
    switch (method) {
      case Method::asoc: {
        AsocConfig cfg = spec.asoc;
        cfg.seed = seed;
        cfg.max_iters = horizon;
        cfg.early_stop = false;
        RunResult r = run(objective, cfg);
        read_checkpoints(r.trace);
        if (spec.keep_traces) out.trace = std::move(r.trace);
        break;
      }
      case Method::ga: {
        baselines::GaConfig cfg = spec.ga;
        cfg.seed = seed;
        cfg.generations = horizon;
        baselines::BaselineResult r = baselines::ga_run(objective, cfg);
        read_checkpoints(r.trace);
        if (spec.keep_traces) out.trace = std::move(r.trace);
        break;
      }
      case Method::sa: {
        for (std::size_t cp : spec.checkpoints) {
          baselines::SaConfig cfg = spec.sa;
          cfg.seed = seed;
          cfg.outer_iterations = cp;
          baselines::BaselineResult r = baselines::sa_run(objective, cfg);
          out.best_at_checkpoint.push_back(r.trace.records.back().best_f);
          out.evaluations_at_checkpoint.push_back(r.trace.records.back().evaluations);
          if (spec.keep_traces && cp == horizon) out.trace = std::move(r.trace);
        }
        break;
      }
    }
  } catch (const std::exception& e) {
    out.best_at_checkpoint.clear();
    out.evaluations_at_checkpoint.clear();
    out.trace.reset();
    out.error = e.what();
  }
  return out;
}

}  // namespace

CheckpointStats summarize_values(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("summarize_values: no values");
  std::sort(values.begin(), values.end());
  CheckpointStats s;
  s.runs = values.size();
  s.median = quantile(values, 0.5);
  s.min = values.front();
  s.max = values.back();
  s.iqr = quantile(values, 0.75) - quantile(values, 0.25);
  return s;
}

ExperimentReport run_comparison(const ExperimentSpec& spec) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();

  ExperimentReport report;
  report.spec = spec;
  std::vector<bench::BenchmarkFunction> functions;
  for (const auto& sel : spec.functions) {
    functions.push_back(bench::make_function(sel.index, sel.dimension));
    for (Method m : spec.methods) {
      const auto& fn = functions.back();
      CellReport cell;
      cell.function_index = fn.index();
      cell.function_name = fn.name();
      cell.function_title = fn.title();
      cell.dimension = fn.dimension();
      cell.true_minimum = fn.minimum_value();
      cell.method = m;
      cell.runs.resize(spec.seeds.size());
      report.cells.push_back(std::move(cell));
    }
  }

  // Each task writes only its own pre-allocated slot.
  const std::size_t methods = spec.methods.size();
  const std::size_t seeds = spec.seeds.size();
  const std::size_t tasks = report.cells.size() * seeds;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      const std::size_t cell = t / seeds;
      const std::size_t seed = t % seeds;
      report.cells[cell].runs[seed] =
          run_one(functions[cell / methods], spec.methods[cell % methods], spec.seeds[seed], spec);
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(spec.jobs, tasks));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  for (auto& cell : report.cells) {
    for (std::size_t k = 0; k < spec.checkpoints.size(); ++k) {
      std::vector<double> values;
      std::vector<double> evaluations;
      for (const auto& run : cell.runs) {
        if (run.error) continue;
        values.push_back(run.best_at_checkpoint[k]);
        evaluations.push_back(static_cast<double>(run.evaluations_at_checkpoint[k]));
      }
      if (values.empty()) break;
      CheckpointStats stats = summarize_values(std::move(values));
      stats.iterations = spec.checkpoints[k];
      stats.median_evaluations = summarize_values(std::move(evaluations)).median;
      cell.checkpoints.push_back(stats);
    }
  }

  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

AsocConfig default_adaptivity_config() {
  AsocConfig cfg;
  cfg.early_stop = false;
  cfg.cov_floor = 1.0;
  return cfg;
}

AdaptivityResult run_adaptivity(std::uint64_t master_seed, std::size_t iterations_per_segment, AsocConfig config) {
  if (iterations_per_segment < 1) throw std::invalid_argument("run_adaptivity: iterations_per_segment must be positive");
  config.seed = master_seed;
  config.max_iters = iterations_per_segment;
  config.early_stop = false;
  Rng rng(master_seed);

  constexpr std::size_t dimension = 2;
  constexpr std::size_t first = 2;  // Ackley shares Sphere's optimum and is skipped
  AdaptivityResult result;
  std::size_t offset = 0;

  for (std::size_t index = first; index <= bench::catalog_size; ++index) {
    const bench::BenchmarkFunction fn = bench::make_function(index, dimension);
    RunResult r = index == first ? run(fn.objective(), config, rng)
                                 : continue_with(std::move(result.final_population), fn.objective(), config, rng);
    Segment seg;
    seg.segment_index = index - first + 1;
    seg.function_index = index;
    seg.function_name = fn.name();
    seg.true_minimum = fn.minimum_value();
    seg.first_iteration = offset + 1;
    offset += r.trace.records.size();
    seg.trace = std::move(r.trace);
    result.segments.push_back(std::move(seg));
    result.final_population = std::move(r.population);
  }
  return result;
}

}  // namespace asoc::harness
