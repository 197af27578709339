#include "asoc/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "asoc/baselines.hpp"
#include "asoc/benchmarks.hpp"
#include "asoc/harness.hpp"
#include "asoc/optimizer.hpp"

namespace asoc::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config_path;
  int verbosity = 0;
  std::optional<std::string> format;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::optional<double> cov_floor;
  std::optional<std::size_t> pool_size;

  // optimize
  std::string function;
  std::optional<std::size_t> dim;
  std::string method = "asoc";
  std::size_t max_iters = 2000;
  bool no_early_stop = false;

  // compare
  std::string functions;
  std::string methods = "sa,ga,asoc";
  std::string checkpoints = "100,500,2000";
  std::size_t seed_count = 20;
  std::string table_output;
  std::size_t jobs = 1;

  // adapt
  std::size_t iterations = 2000;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) parts.push_back(item.substr(b, e - b + 1));
  }
  return parts;
}

std::string valid_names() {
  std::string s;
  for (const auto& name : bench::function_names()) s += (s.empty() ? "" : ", ") + name;
  return s;
}

std::size_t resolve_function(const std::string& selector) {
  if (!selector.empty() && std::all_of(selector.begin(), selector.end(), ::isdigit)) {
    const std::size_t index = std::stoul(selector);
    if (index >= 1 && index <= bench::catalog_size) return index;
  } else if (auto index = bench::find_index(selector)) {
    return *index;
  }
  throw UsageError("unknown function '" + selector + "'; valid names: " + valid_names());
}

bench::BenchmarkFunction make_checked(std::size_t index, std::optional<std::size_t> dim) {
  try {
    return bench::make_function(index, dim);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::uint64_t resolve_seed(const Options& opt) {
  if (opt.seed) return *opt.seed;
  if (const char* env = std::getenv("ASOC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("ASOC_SEED is not an unsigned integer: ") + env);
    }
  }
  return 0;
}

std::string resolve_format(const Options& opt, bool terminal, const std::string& fallback = "") {
  if (opt.format) return *opt.format;
  if (!fallback.empty()) return fallback;
  return terminal ? "table" : "json";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << content;
  if (!os) throw std::runtime_error("failed writing " + path);
}

// Flat "key = value" file; keys are long option names. Only options that
// were not given on the command line are filled in.
void apply_config_file(CLI::App& sub, const std::string& path, std::ostream& err, int verbosity) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r\"");
      const auto e = s.find_last_not_of(" \t\r\"");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr) {
      if (verbosity > 0) err << "config: ignoring '" << key << "' (not an option of " << sub.get_name() << ")\n";
      continue;
    }
    if (opt->count() > 0) continue;
    if (opt->get_type_size() == 0) {
      if (value == "true" || value == "1") {
        opt->add_result("true");
        opt->run_callback();
      }
      continue;
    }
    opt->add_result(value);
    opt->run_callback();
  }
}

nlohmann::json record_json(const IterationRecord& rec) {
  return {{"iteration", rec.iteration}, {"best_f", rec.best_f}, {"evaluations", rec.evaluations}};
}

nlohmann::json point_json(const Vector& x) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index k = 0; k < x.size(); ++k) arr.push_back(x(k));
  return arr;
}

int cmd_optimize(const Options& opt, std::ostream& out, std::ostream& err, bool terminal) {
  // checked here rather than by the parser so that a config file can supply it
  if (opt.function.empty()) throw UsageError("--function is required");
  const std::size_t index = resolve_function(opt.function);
  const bench::BenchmarkFunction fn = make_checked(index, opt.dim);
  const auto method = harness::parse_method(opt.method);
  if (!method) throw UsageError("unknown method '" + opt.method + "'; expected asoc, sa or ga");
  if (opt.max_iters < 1) throw UsageError("--max-iters must be positive");
  const std::string format = resolve_format(opt, terminal);
  const std::uint64_t seed = resolve_seed(opt);
  const Objective objective = fn.objective();

  Vector best_x;
  double best_f = 0.0;
  RunTrace trace;
  std::uint64_t evaluations = 0;
  switch (*method) {
    case harness::Method::asoc: {
      AsocConfig cfg;
      cfg.seed = seed;
      cfg.max_iters = opt.max_iters;
      if (opt.pool_size) cfg.pool_size = *opt.pool_size;
      if (opt.cov_floor) cfg.cov_floor = *opt.cov_floor;
      cfg.early_stop = !opt.no_early_stop;
      RunResult r = run(objective, cfg);
      best_x = r.population.best_point();
      best_f = r.population.best_value();
      evaluations = r.population.evaluation_count;
      trace = std::move(r.trace);
      break;
    }
    case harness::Method::sa: {
      baselines::SaConfig cfg;
      cfg.seed = seed;
      cfg.outer_iterations = opt.max_iters;
      auto r = baselines::sa_run(objective, cfg);
      best_x = r.best_point;
      best_f = r.best_value;
      trace = std::move(r.trace);
      evaluations = trace.records.back().evaluations;
      break;
    }
    case harness::Method::ga: {
      baselines::GaConfig cfg;
      cfg.seed = seed;
      cfg.generations = opt.max_iters;
      if (opt.pool_size) cfg.population_size = *opt.pool_size;
      auto r = baselines::ga_run(objective, cfg);
      best_x = r.best_point;
      best_f = r.best_value;
      trace = std::move(r.trace);
      evaluations = trace.records.back().evaluations;
      break;
    }
  }

  const std::size_t iterations = trace.records.size();
  std::ostringstream summary;
  if (format == "json") {
    nlohmann::json j = {{"function", fn.name()},
                        {"dimension", fn.dimension()},
                        {"method", opt.method},
                        {"seed", seed},
                        {"best_f", best_f},
                        {"best_x", point_json(best_x)},
                        {"iterations", iterations},
                        {"evaluations", evaluations},
                        {"status", to_string(trace.status)},
                        {"true_minimum", fn.minimum_value()}};
    if (!trace.records.empty()) j["last_record"] = record_json(trace.records.back());
    summary << j.dump(2) << '\n';
  } else if (format == "csv") {
    harness::write_trace_csv(summary, trace);
  } else {
    summary << "function     " << fn.title() << '\n'
            << "method       " << opt.method << '\n'
            << "seed         " << seed << '\n'
            << "best_f       " << harness::format_number(best_f) << '\n'
            << "best_x       " << format_point(best_x) << '\n'
            << "iterations   " << iterations << '\n'
            << "evaluations  " << evaluations << '\n'
            << "status       " << to_string(trace.status) << '\n';
  }

  if (!opt.output.empty()) {
    std::ostringstream csv;
    harness::write_trace_csv(csv, trace);
    write_file(opt.output, csv.str());
    if (format != "csv") err << summary.str();
  } else {
    out << summary.str();
  }
  return exit_ok;
}

int cmd_compare(const Options& opt, std::ostream& out, std::ostream& err, bool terminal) {
  harness::ExperimentSpec spec = harness::ExperimentSpec::defaults(resolve_seed(opt));
  if (!opt.functions.empty()) {
    spec.functions.clear();
    for (const auto& item : split(opt.functions, ',')) {
      // "name" or "name:dim"
      const auto colon = item.find(':');
      harness::FunctionSelector sel;
      sel.index = resolve_function(item.substr(0, colon));
      if (colon != std::string::npos) {
        try {
          sel.dimension = std::stoul(item.substr(colon + 1));
        } catch (const std::exception&) {
          throw UsageError("bad dimension in '" + item + "'");
        }
      } else if (opt.dim) {
        sel.dimension = bench::make_function(sel.index).parametric() ? opt.dim : std::nullopt;
      }
      make_checked(sel.index, sel.dimension);
      spec.functions.push_back(sel);
    }
  } else if (opt.dim) {
    for (auto& sel : spec.functions) {
      if (bench::make_function(sel.index).parametric()) sel.dimension = opt.dim;
    }
  }
  spec.methods.clear();
  for (const auto& item : split(opt.methods, ',')) {
    const auto m = harness::parse_method(item);
    if (!m) throw UsageError("unknown method '" + item + "'; expected asoc, sa or ga");
    spec.methods.push_back(*m);
  }
  spec.checkpoints.clear();
  for (const auto& item : split(opt.checkpoints, ',')) {
    try {
      spec.checkpoints.push_back(std::stoul(item));
    } catch (const std::exception&) {
      throw UsageError("bad checkpoint '" + item + "'");
    }
  }
  if (opt.seed_count < 1) throw UsageError("--seeds must be at least 1");
  spec.seeds = harness::derive_seeds(resolve_seed(opt), opt.seed_count);
  if (opt.pool_size) {
    spec.asoc.pool_size = *opt.pool_size;
    spec.ga.population_size = *opt.pool_size;
  }
  if (opt.cov_floor) spec.asoc.cov_floor = *opt.cov_floor;
  spec.jobs = opt.jobs;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const harness::ExperimentReport report = harness::run_comparison(spec);
  if (opt.verbosity > 0) err << "compare: " << report.cells.size() << " cells in " << report.wall_seconds << " s\n";

  const std::string json_text = harness::to_json(report).dump(2) + "\n";
  const std::string table_text = harness::format_table(harness::summarize(report));
  if (!opt.output.empty()) write_file(opt.output, json_text);
  if (!opt.table_output.empty()) write_file(opt.table_output, table_text);
  if (opt.output.empty() && opt.table_output.empty()) {
    out << (resolve_format(opt, terminal) == "json" ? json_text : table_text);
  } else if (opt.verbosity > 0) {
    err << table_text;
  }

  std::size_t failed_cells = 0;
  for (const auto& cell : report.cells) {
    if (cell.failures() == cell.runs.size()) ++failed_cells;
    for (const auto& run : cell.runs) {
      if (run.error) err << "compare: " << cell.function_name << "/" << harness::to_string(cell.method) << " seed "
                         << run.seed << ": " << *run.error << '\n';
    }
  }
  return !report.cells.empty() && failed_cells == report.cells.size() ? exit_runtime : exit_ok;
}

int cmd_adapt(const Options& opt, std::ostream& out, std::ostream& err, bool) {
  if (opt.iterations < 1) throw UsageError("--iterations must be positive");
  AsocConfig cfg = harness::default_adaptivity_config();
  if (opt.cov_floor) cfg.cov_floor = *opt.cov_floor;
  if (opt.pool_size) cfg.pool_size = *opt.pool_size;
  const harness::AdaptivityResult result = harness::run_adaptivity(resolve_seed(opt), opt.iterations, cfg);
  const std::string format = opt.format.value_or("csv");

  std::ostringstream data;
  if (format == "csv") {
    harness::write_adaptivity_csv(data, result);
  } else if (format == "json") {
    nlohmann::json segs = nlohmann::json::array();
    for (const auto& s : result.segments) {
      segs.push_back({{"segment_index", s.segment_index},
                      {"function", s.function_name},
                      {"true_minimum", s.true_minimum},
                      {"initial_best_f", s.trace.initial_best_f},
                      {"final_best_f", s.trace.final_best_f()},
                      {"first_iteration", s.first_iteration}});
    }
    data << nlohmann::json{{"segments", segs}}.dump(2) << '\n';
  } else {
    harness::Table table;
    table.header = {"Segment", "Function", "True minimum", "Start best_f", "Final best_f"};
    for (const auto& s : result.segments) {
      table.rows.push_back({std::to_string(s.segment_index), s.function_name, harness::format_number(s.true_minimum),
                            harness::format_number(s.trace.initial_best_f),
                            harness::format_number(s.trace.final_best_f())});
    }
    data << harness::format_table(table);
  }

  if (!opt.output.empty()) {
    std::ostringstream csv;
    harness::write_adaptivity_csv(csv, result);
    write_file(opt.output, csv.str());
    if (opt.verbosity > 0) err << "adapt: wrote " << result.segments.size() << " segments to " << opt.output << '\n';
  } else {
    out << data.str();
  }
  return exit_ok;
}

int cmd_list(const Options& opt, std::ostream& out, bool terminal) {
  const std::string format = resolve_format(opt, terminal);
  const auto functions = bench::catalog();
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& fn : functions) {
      arr.push_back({{"index", fn.index()},
                     {"name", fn.name()},
                     {"title", fn.title()},
                     {"dimension", fn.dimension()},
                     {"parametric", fn.parametric()},
                     {"lower", point_json(fn.domain().lower())},
                     {"upper", point_json(fn.domain().upper())},
                     {"minimum", fn.minimum_value()}});
    }
    out << arr.dump(2) << '\n';
    return exit_ok;
  }
  if (format == "csv") {
    out << "index,name,dimension,minimum\n";
    for (const auto& fn : functions) {
      out << fn.index() << ',' << fn.name() << ',' << fn.dimension() << ',' << harness::format_number(fn.minimum_value())
          << '\n';
    }
    return exit_ok;
  }
  harness::Table table;
  table.header = {"#", "Name", "Dim", "Domain", "Minimum"};
  for (const auto& fn : functions) {
    const auto& box = fn.domain();
    std::ostringstream domain;
    const bool cube = (box.lower().array() == box.lower()(0)).all() && (box.upper().array() == box.upper()(0)).all();
    if (cube) {
      domain << '[' << box.lower()(0) << ", " << box.upper()(0) << "]^" << fn.dimension();
    } else {
      for (Eigen::Index k = 0; k < box.lower().size(); ++k) {
        domain << (k ? " x " : "") << '[' << box.lower()(k) << ", " << box.upper()(k) << ']';
      }
    }
    table.rows.push_back({std::to_string(fn.index()), fn.name() + (fn.parametric() ? " (n)" : ""),
                          std::to_string(fn.dimension()), domain.str(), harness::format_number(fn.minimum_value())});
  }
  out << harness::format_table(table);
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool out_is_terminal) {
  CLI::App app{"ASOC derivative-free optimizer, SA/GA baselines and benchmark harness", "asoc"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "Flat key = value file; command-line flags win");
    sub->add_flag("-v,--verbose", opt.verbosity, "More diagnostics on stderr");
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("-o,--output", opt.output, "Output path");
    sub->add_option("--seed", opt.seed, "Master seed (falls back to ASOC_SEED, then 0)");
  };

  CLI::App* optimize = app.add_subcommand("optimize", "Run one optimizer on one benchmark function");
  add_common(optimize);
  optimize->add_option("-f,--function", opt.function, "Function name or 1-based index (required)");
  optimize->add_option("--dim", opt.dim, "Dimension (Sphere, Rosenbrock, Styblinski-Tang)");
  optimize->add_option("-m,--method", opt.method, "asoc, sa or ga");
  optimize->add_option("--pool-size", opt.pool_size, "ASOC pool size / GA population size");
  optimize->add_option("--max-iters", opt.max_iters, "Iterations (ASOC), generations (GA), temperatures (SA)");
  optimize->add_option("--cov-floor", opt.cov_floor, "Covariance floor added to the ASOC target distribution");
  optimize->add_flag("--no-early-stop", opt.no_early_stop, "Always run --max-iters ASOC iterations");

  CLI::App* compare = app.add_subcommand("compare", "Compare ASOC, SA and GA on the benchmark suite");
  add_common(compare);
  compare->add_option("--functions", opt.functions, "Comma list of names/indices, optional :dim suffix");
  compare->add_option("--dim", opt.dim, "Dimension for parametric functions");
  compare->add_option("--methods", opt.methods, "Comma list of asoc, sa, ga");
  compare->add_option("--checkpoints", opt.checkpoints, "Comma list of increasing iteration counts");
  compare->add_option("--seeds", opt.seed_count, "Number of seeds derived from --seed");
  compare->add_option("--table", opt.table_output, "Also write the text table to this path");
  compare->add_option("-j,--jobs", opt.jobs, "Worker threads");
  compare->add_option("--pool-size", opt.pool_size, "ASOC pool size / GA population size");
  compare->add_option("--cov-floor", opt.cov_floor, "ASOC covariance floor");

  CLI::App* adapt = app.add_subcommand("adapt", "Switch objectives 2..18 without reinitializing the ASOC pool");
  add_common(adapt);
  adapt->add_option("--iterations", opt.iterations, "Iterations per function segment");
  adapt->add_option("--cov-floor", opt.cov_floor, "ASOC covariance floor (default 1)");
  adapt->add_option("--pool-size", opt.pool_size, "ASOC pool size");

  CLI::App* list = app.add_subcommand("list-functions", "List the benchmark catalog");
  list->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!opt.config_path.empty()) apply_config_file(*active, opt.config_path, err, opt.verbosity);
    if (active == optimize) return cmd_optimize(opt, out, err, out_is_terminal);
    if (active == compare) return cmd_compare(opt, out, err, out_is_terminal);
    if (active == adapt) return cmd_adapt(opt, out, err, out_is_terminal);
    return cmd_list(opt, out, out_is_terminal);
  } catch (const UsageError& e) {
    err << "asoc: " << e.what() << '\n';
    return exit_usage;
  } catch (const CLI::ParseError& e) {
    err << "asoc: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "asoc: " << e.what() << '\n';
    return exit_runtime;
  }
}

}  // namespace asoc::cli
