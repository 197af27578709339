#include <algorithm>
#include <charconv>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "asoc/harness.hpp"

namespace asoc::harness {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::string format_cell(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

nlohmann::json config_json(const ExperimentSpec& spec) {
  return {
      {"asoc",
       {{"pool_size", spec.asoc.pool_size},
        {"regularization", spec.asoc.regularization},
        {"cov_floor", spec.asoc.cov_floor}}},
      {"sa",
       {{"samples_per_temperature", spec.sa.samples_per_temperature},
        {"initial_temperature", spec.sa.initial_temperature},
        {"neighbor_scale", spec.sa.neighbor_scale}}},
      {"ga",
       {{"population_size", spec.ga.population_size},
        {"crossover_probability", spec.ga.crossover_probability},
        {"mutation_probability", spec.ga.mutation_probability},
        {"mutation_scale", spec.ga.mutation_scale},
        {"blend_alpha", spec.ga.blend_alpha}}},
  };
}

}  // namespace

Table summarize(const ExperimentReport& report) {
  const ExperimentSpec& spec = report.spec;
  Table table;
  table.header = {"Function", "True minimum"};
  for (Method m : spec.methods) {
    std::string label = to_string(m);
    std::transform(label.begin(), label.end(), label.begin(), [](unsigned char c) { return std::toupper(c); });
    for (std::size_t cp : spec.checkpoints) table.header.push_back(label + " " + std::to_string(cp));
  }
  if (spec.methods.empty()) return table;

  const std::size_t methods = spec.methods.size();
  for (std::size_t first = 0; first < report.cells.size(); first += methods) {
    const CellReport& lead = report.cells[first];
    std::vector<std::string> row{lead.function_title, format_cell(lead.true_minimum)};
    for (std::size_t m = 0; m < methods; ++m) {
      const CellReport& cell = report.cells[first + m];
      for (std::size_t k = 0; k < spec.checkpoints.size(); ++k) {
        if (k >= cell.checkpoints.size()) {
          row.emplace_back("ERR");
        } else if (cell.checkpoints[k].median > not_converged_threshold) {
          row.emplace_back("-");
        } else {
          row.push_back(format_cell(cell.checkpoints[k].median));
        }
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string format_table(const Table& table) {
  std::vector<std::size_t> widths(table.header.size(), 0);
  auto widen = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size() && c < widths.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  };
  widen(table.header);
  for (const auto& row : table.rows) widen(row);

  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << "  ";
      // first column left-aligned, numbers right-aligned
      if (c == 0) {
        os << row[c] << std::string(widths[c] - row[c].size(), ' ');
      } else {
        os << std::string(widths[c] - row[c].size(), ' ') << row[c];
      }
    }
    os << '\n';
  };
  emit(table.header);
  std::size_t total = 0;
  for (std::size_t w : widths) total += w;
  total += widths.empty() ? 0 : 2 * (widths.size() - 1);
  os << std::string(total, '-') << '\n';
  for (const auto& row : table.rows) emit(row);
  return os.str();
}

nlohmann::json to_json(const ExperimentReport& report) {
  const ExperimentSpec& spec = report.spec;
  nlohmann::json methods = nlohmann::json::array();
  for (Method m : spec.methods) methods.push_back(to_string(m));

  nlohmann::json cells = nlohmann::json::array();
  for (const auto& cell : report.cells) {
    nlohmann::json checkpoints = nlohmann::json::array();
    for (const auto& s : cell.checkpoints) {
      checkpoints.push_back({{"iterations", s.iterations},
                             {"median", s.median},
                             {"min", s.min},
                             {"max", s.max},
                             {"iqr", s.iqr},
                             {"median_evaluations", s.median_evaluations},
                             {"runs", s.runs}});
    }
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& run : cell.runs) {
      nlohmann::json r = {{"seed", run.seed},
                          {"best_f", run.best_at_checkpoint},
                          {"evaluations", run.evaluations_at_checkpoint}};
      r["error"] = run.error ? nlohmann::json(*run.error) : nlohmann::json(nullptr);
      runs.push_back(std::move(r));
    }
    cells.push_back({{"function", cell.function_name},
                     {"index", cell.function_index},
                     {"dimension", cell.dimension},
                     {"true_minimum", cell.true_minimum},
                     {"method", to_string(cell.method)},
                     {"failures", cell.failures()},
                     {"checkpoints", std::move(checkpoints)},
                     {"runs", std::move(runs)}});
  }

  return {{"checkpoints", spec.checkpoints},
          {"methods", std::move(methods)},
          {"seeds", spec.seeds},
          {"config", config_json(spec)},
          {"cells", std::move(cells)}};
}

void write_trace_rows(std::ostream& os, const RunTrace& trace, std::size_t segment_index,
                      std::size_t iteration_offset) {
  for (const auto& rec : trace.records) {
    os << rec.iteration + iteration_offset << ',' << format_number(rec.best_f) << ','
       << format_number(rec.pool_mean_f) << ',' << rec.evaluations << ',' << segment_index << '\n';
  }
}

void write_trace_csv(std::ostream& os, const RunTrace& trace, std::size_t segment_index) {
  os << trace_csv_header << '\n';
  write_trace_rows(os, trace, segment_index);
}

void write_adaptivity_csv(std::ostream& os, const AdaptivityResult& result) {
  os << trace_csv_header << '\n';
  for (const auto& seg : result.segments) write_trace_rows(os, seg.trace, seg.segment_index, seg.first_iteration - 1);
}

}  // namespace asoc::harness
