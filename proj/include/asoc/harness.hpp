#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "asoc/baselines.hpp"
#include "asoc/benchmarks.hpp"
#include "asoc/optimizer.hpp"

namespace asoc::harness {

enum class Method { sa, ga, asoc };

std::string to_string(Method method);
std::optional<Method> parse_method(const std::string& name);

struct FunctionSelector {
  std::size_t index = 1;  // 1-based catalog index
  std::optional<std::size_t> dimension;
};

/// Values above this are shown as "-" (not converged) in text tables.
inline constexpr double not_converged_threshold = 1e3;

/// Seeds [derive_seed(master, 0), ..., derive_seed(master, count - 1)].
std::vector<std::uint64_t> derive_seeds(std::uint64_t master, std::size_t count = 20);

struct ExperimentSpec {
  std::vector<FunctionSelector> functions;
  std::vector<Method> methods{Method::sa, Method::ga, Method::asoc};
  std::vector<std::size_t> checkpoints{100, 500, 2000};
  std::vector<std::uint64_t> seeds;
  // Per-method settings; iteration budgets and seeds are overwritten per run.
  AsocConfig asoc;
  baselines::SaConfig sa;
  baselines::GaConfig ga;
  bool keep_traces = false;
  std::size_t jobs = 1;

  /// All 18 functions at their default dimensions, 3 methods, checkpoints
  /// 100/500/2000 and 20 seeds derived from `master_seed`.
  static ExperimentSpec defaults(std::uint64_t master_seed);

  void validate() const;
};

struct CheckpointStats {
  std::size_t iterations = 0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  double iqr = 0.0;
  double median_evaluations = 0.0;
  std::size_t runs = 0;  // successful runs the statistics cover
};

struct RunOutcome {
  std::uint64_t seed = 0;
  std::vector<double> best_at_checkpoint;
  std::vector<std::uint64_t> evaluations_at_checkpoint;
  std::optional<std::string> error;
  std::optional<RunTrace> trace;  // longest run, kept when spec.keep_traces
};

struct CellReport {
  std::size_t function_index = 0;
  std::string function_name;
  std::string function_title;
  std::size_t dimension = 0;
  double true_minimum = 0.0;
  Method method = Method::asoc;
  std::vector<CheckpointStats> checkpoints;  // empty when every run failed
  std::vector<RunOutcome> runs;

  std::size_t failures() const;
};

struct ExperimentReport {
  ExperimentSpec spec;
  std::vector<CellReport> cells;  // function-major, then method in spec order
  double wall_seconds = 0.0;
};

/// Runs every (function, method, seed) combination once to the largest
/// checkpoint and reads best-so-far at each checkpoint. SA is the exception:
/// its schedule spans the run length, so it runs once per checkpoint. ASOC
/// runs with early stopping off. A failing run is recorded in its cell and
/// does not stop the experiment. Output order does not depend on `jobs`.
ExperimentReport run_comparison(const ExperimentSpec& spec);

/// Median / min / max / interquartile range (linear interpolation between
/// order statistics). Throws on an empty input.
CheckpointStats summarize_values(std::vector<double> values);

struct Segment {
  std::size_t segment_index = 0;  // 1-based
  std::size_t function_index = 0;
  std::string function_name;
  double true_minimum = 0.0;
  std::size_t first_iteration = 0;  // cumulative iteration of the segment's first record
  RunTrace trace;
};

struct AdaptivityResult {
  std::vector<Segment> segments;
  Population final_population;
};

/// ASOC settings used by the function-switching experiment: early stopping
/// off and cov_floor = 1 so that a collapsed pool can still move after a
/// switch.
AsocConfig default_adaptivity_config();

/// Starts ASOC on Sphere (n=2), then switches through catalog entries 3..18
/// (all at n=2) without reinitializing the pool, `iterations_per_segment`
/// iterations each. One random stream seeded by `master_seed` drives the
/// whole sequence.
AdaptivityResult run_adaptivity(std::uint64_t master_seed, std::size_t iterations_per_segment = 2000,
                                AsocConfig config = default_adaptivity_config());

// --- reporting ------------------------------------------------------------

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Comparison layout: function, true minimum, then one median cell per method x
/// checkpoint. "-" marks medians above the not-converged threshold, "ERR"
/// cells where every run failed.
Table summarize(const ExperimentReport& report);

/// Column-aligned plain text.
std::string format_table(const Table& table);

nlohmann::json to_json(const ExperimentReport& report);

inline constexpr const char* trace_csv_header = "iteration,best_f,pool_mean_f,evaluations,segment_index";

/// Appends trace rows; `iteration_offset` is added to each record's
/// iteration so that concatenated segments stay strictly increasing.
void write_trace_rows(std::ostream& os, const RunTrace& trace, std::size_t segment_index,
                      std::size_t iteration_offset = 0);

void write_trace_csv(std::ostream& os, const RunTrace& trace, std::size_t segment_index = 1);
void write_adaptivity_csv(std::ostream& os, const AdaptivityResult& result);

/// Shortest round-trip decimal form of a double.
std::string format_number(double value);

}  // namespace asoc::harness
