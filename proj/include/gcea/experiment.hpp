#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include <gcea/benchmark.hpp>
#include <gcea/engine.hpp>
#include <gcea/error.hpp>
#include <gcea/nk_io.hpp>
#include <gcea/nk_landscape.hpp>
#include <gcea/problem.hpp>
#include <gcea/random.hpp>
#include <gcea/stats.hpp>

namespace gcea {

/// Shortest text that reads back to the same double.
inline std::string format_real(double v) {
  char buf[32];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

/// Objective of a run: an NK landscape (maximised) or a benchmark function
/// (minimised) of dimension n.
struct Objective {
  std::string name = "nk";  ///< "nk" or a benchmark function name
  std::size_t n = 0;
  std::optional<std::size_t> k;
  std::shared_ptr<const NkLandscape> landscape;
  BenchmarkFunction function = BenchmarkFunction::sphere;

  bool is_nk() const noexcept { return name == "nk"; }
  Direction direction() const noexcept {
    return is_nk() ? Direction::maximise : Direction::minimise;
  }

  static Objective nk(std::shared_ptr<const NkLandscape> land) {
    Objective o;
    o.n = land->n();
    o.k = land->k();
    o.landscape = std::move(land);
    return o;
  }
  static Objective benchmark(BenchmarkFunction f, std::size_t n) {
    BenchmarkProblem check(f, n);
    Objective o;
    o.name = std::string(to_string(f));
    o.n = n;
    o.function = f;
    return o;
  }
};

/// One grid cell: a configuration run `runs` times with run indices 0..runs-1.
struct Cell {
  std::uint64_t id = 0;
  RunConfig config;  ///< run_index is filled per run
  std::string function = "nk";
  std::size_t n = 0;
  std::optional<std::size_t> k;
  std::size_t runs = 1;
};

/// One CSV result row plus the run's trace.
struct RunRecord {
  Algorithm algorithm = Algorithm::ea;
  std::string function;
  std::size_t n = 0;
  std::optional<std::size_t> k;
  std::size_t s = 0;
  std::uint64_t run_index = 0;
  std::uint64_t seed = 0;
  double best_fitness = 0.0;
  std::uint64_t evaluations_used = 0;
  std::uint64_t initial_evaluations = 0;
  std::uint64_t offspring = 0;
  std::vector<TracePoint> trace;
};

struct CellResult {
  Cell cell;
  std::vector<RunRecord> runs;
  bool ok = true;
  std::string error;
};

/// Runs one configuration against one objective and checks that the stored
/// best genome re-evaluates to the reported value.
inline RunRecord execute_run(const Cell& cell, const Objective& objective,
                             std::uint64_t run_index) {
  RunConfig config = cell.config;
  config.run_index = run_index;
  RunRecord rec;
  rec.algorithm = config.algorithm;
  rec.function = objective.name;
  rec.n = objective.n;
  rec.k = objective.k;
  rec.s = config.s;
  rec.run_index = run_index;
  rec.seed = config.seed();
  auto fill = [&](const auto& result, double reevaluated) {
    if (reevaluated != result.best_fitness) {
      throw Error("best genome does not re-evaluate to the reported best fitness");
    }
    rec.best_fitness = result.best_fitness;
    rec.evaluations_used = result.evaluations_used;
    rec.initial_evaluations = result.initial_evaluations;
    rec.offspring = result.offspring;
    rec.trace = result.trace;
  };
  if (objective.is_nk()) {
    const NkProblem problem(*objective.landscape);
    const auto r = run(config, problem);
    fill(r, problem.evaluate(r.best_genome));
  } else {
    const BenchmarkProblem problem(objective.function, objective.n);
    const auto r = run(config, problem);
    fill(r, problem.evaluate(r.best_genome));
  }
  return rec;
}

/// Runs all cells with up to `jobs` worker threads. Results are ordered by
/// cell then run index whatever the completion order. A cell whose objective
/// is missing or whose run throws is marked failed; other cells continue.
inline std::vector<CellResult> run_cells(const std::vector<Cell>& cells,
                                         const std::vector<std::optional<Objective>>& objectives,
                                         const std::vector<std::string>& objective_errors,
                                         std::size_t jobs) {
  std::vector<CellResult> results(cells.size());
  struct Task {
    std::size_t cell;
    std::uint64_t run;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    results[c].cell = cells[c];
    if (!objectives[c]) {
      results[c].ok = false;
      results[c].error = objective_errors[c];
      continue;
    }
    results[c].runs.resize(cells[c].runs);
    for (std::uint64_t r = 0; r < cells[c].runs; ++r) tasks.push_back({c, r});
  }
  std::vector<std::string> task_errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const auto [c, r] = tasks[t];
      try {
        results[c].runs[r] = execute_run(cells[c], *objectives[c], r);
      } catch (const std::exception& e) {
        task_errors[t] = e.what();
        if (task_errors[t].empty()) task_errors[t] = "run failed";
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, tasks.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    auto& res = results[tasks[t].cell];
    if (!task_errors[t].empty() && res.ok) {
      res.ok = false;
      res.error = "run " + std::to_string(tasks[t].run) + ": " + task_errors[t];
    }
  }
  for (auto& res : results) {
    if (!res.ok) res.runs.clear();
  }
  return results;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr const char* results_header =
    "algorithm,function,n,k,s,run_index,seed,best_fitness,evaluations_used";

inline std::string to_csv_row(const RunRecord& r) {
  std::string row;
  row += to_string(r.algorithm);
  row += ',' + r.function + ',' + std::to_string(r.n) + ',';
  if (r.k) row += std::to_string(*r.k);
  row += ',' + std::to_string(r.s) + ',' + std::to_string(r.run_index) + ',' +
         std::to_string(r.seed) + ',' + format_real(r.best_fitness) + ',' +
         std::to_string(r.evaluations_used);
  return row;
}

inline std::string results_csv(const std::vector<RunRecord>& rows) {
  std::string out = std::string(results_header) + "\n";
  for (const auto& r : rows) out += to_csv_row(r) + "\n";
  return out;
}

inline std::string trace_csv(const std::vector<TracePoint>& trace) {
  std::string out = "evaluations,best_fitness\n";
  for (const auto& p : trace) out += std::to_string(p.evaluations) + ',' + format_real(p.best) + "\n";
  return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw ParameterError("failed writing '" + path.string() + "'");
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (const char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

/// A row read back from a results CSV.
struct ResultRow {
  std::string algorithm;
  std::string function;
  std::size_t n = 0;
  std::string k;
  std::size_t s = 0;
  double best_fitness = 0.0;
};

inline std::vector<ResultRow> read_results_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open results file '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path.string() + ": empty results file");
  const auto header = split_csv_line(line);
  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw FormatError(path.string() + ": missing column '" + name + "'");
  };
  const std::size_t ca = column("algorithm"), cf = column("function"), cn = column("n"),
                    ck = column("k"), cs = column("s"), cb = column("best_fitness");
  std::vector<ResultRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": wrong field count");
    }
    ResultRow row;
    try {
      row.algorithm = f[ca];
      row.function = f[cf];
      row.n = std::stoul(f[cn]);
      row.k = f[ck];
      row.s = std::stoul(f[cs]);
      std::size_t used = 0;
      row.best_fitness = std::stod(f[cb], &used);
      if (used != f[cb].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": malformed field");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Comparison reports

/// Groups the rows of each file by (algorithm, s) and compares every pair of
/// groups. All rows must share one objective (function, n, k).
inline std::vector<ComparisonRow> compare_files(const std::vector<std::filesystem::path>& files,
                                                double alpha) {
  if (files.size() < 2) throw ParameterError("compare needs at least two result files");
  std::optional<std::tuple<std::string, std::size_t, std::string>> objective;
  std::vector<ResultSet> sets;
  for (const auto& file : files) {
    const auto rows = read_results_csv(file);
    if (rows.empty()) throw ParameterError(file.string() + ": no result rows");
    std::vector<ResultSet> file_sets;
    for (const auto& r : rows) {
      const auto key = std::make_tuple(r.function, r.n, r.k);
      if (!objective) objective = key;
      if (*objective != key) {
        throw ParameterError("mismatched objectives: " + file.string() + " has " + r.function +
                             " n=" + std::to_string(r.n) + " k=" + r.k + ", expected " +
                             std::get<0>(*objective) + " n=" +
                             std::to_string(std::get<1>(*objective)) + " k=" +
                             std::get<2>(*objective));
      }
      const std::string label = r.algorithm + " s=" + std::to_string(r.s);
      auto it = std::find_if(file_sets.begin(), file_sets.end(),
                             [&](const ResultSet& s) { return s.label == label; });
      if (it == file_sets.end()) {
        file_sets.push_back({label, r.function == "nk" ? Direction::maximise : Direction::minimise,
                             {}});
        it = file_sets.end() - 1;
      }
      it->values.push_back(r.best_fitness);
    }
    for (auto& s : file_sets) {
      auto taken = [&](const std::string& l) {
        return std::any_of(sets.begin(), sets.end(), [&](const ResultSet& x) { return x.label == l; });
      };
      std::string label = s.label;
      if (taken(label)) label = s.label + " [" + file.stem().string() + "]";
      for (int i = 2; taken(label); ++i) label = s.label + " #" + std::to_string(i);
      s.label = label;
      sets.push_back(std::move(s));
    }
  }
  std::vector<ComparisonRow> rows;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) rows.push_back(compare(sets[i], sets[j], alpha));
  }
  return rows;
}

inline std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::string out =
      "label_a,label_b,count_a,mean_a,std_a,count_b,mean_b,std_b,t,p,significant,better\n";
  for (const auto& r : rows) {
    out += r.label_a + ',' + r.label_b + ',' + std::to_string(r.a.count) + ',' +
           format_real(r.a.mean) + ',' + format_real(r.a.std_dev) + ',' +
           std::to_string(r.b.count) + ',' + format_real(r.b.mean) + ',' +
           format_real(r.b.std_dev) + ',' + format_real(r.t) + ',' + format_real(r.p) + ',' +
           (r.significant ? "true" : "false") + ',' + r.better + "\n";
  }
  return out;
}

inline std::string comparison_text(const std::vector<ComparisonRow>& rows) {
  std::size_t wa = 7, wb = 7;
  for (const auto& r : rows) {
    wa = std::max(wa, r.label_a.size());
    wb = std::max(wb, r.label_b.size());
  }
  std::string out;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-*s  %-*s  %12s %10s  %12s %10s  %9s %10s  %-3s  %s\n",
                static_cast<int>(wa), "label_a", static_cast<int>(wb), "label_b", "mean_a",
                "std_a", "mean_b", "std_b", "t", "p", "sig", "better");
  out += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-*s  %-*s  %12.6g %10.3g  %12.6g %10.3g  %9.3f %10.3g  %-3s  %s\n",
                  static_cast<int>(wa), r.label_a.c_str(), static_cast<int>(wb),
                  r.label_b.c_str(), r.a.mean, r.a.std_dev, r.b.mean, r.b.std_dev, r.t, r.p,
                  r.significant ? "yes" : "no", r.better.empty() ? "-" : r.better.c_str());
    out += buf;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps

/// Grid of experiments read from a JSON spec file:
///
///   {"algorithms": ["ea", "gcea"], "functions": ["nk"], "n": [200],
///    "k": [0, 4, 10], "s": [2], "runs": 30, "seed": 1, "pop_size": 50,
///    "evals": 20000, "trace_interval": 1000, "write_traces": false,
///    "landscape_seed": 7, "output_dir": "out"}
///
/// Cells are expanded in the order algorithms x functions x n x k x s; the k
/// axis applies to "nk" only. Cell ids are positions in that order.
struct ExperimentSpec {
  std::vector<Algorithm> algorithms;
  std::vector<std::string> functions{"nk"};
  std::vector<std::size_t> n;
  std::vector<std::size_t> k{0};
  std::vector<std::size_t> s{2};
  std::size_t runs = 50;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> landscape_seed;
  std::size_t pop_size = 50;
  std::uint64_t evals = 100000;
  std::uint64_t trace_interval = 1000;
  bool write_traces = false;
  std::filesystem::path output_dir = "sweep_out";
};

namespace detail {

template <class T>
std::vector<T> list_field(const nlohmann::json& j, const char* name) {
  const auto& v = j.at(name);
  if (!v.is_array() || v.empty()) {
    throw ParameterError(std::string("sweep spec: '") + name + "' must be a non-empty array");
  }
  return v.get<std::vector<T>>();
}

}  // namespace detail

inline ExperimentSpec parse_experiment_spec(const nlohmann::json& j) {
  if (!j.is_object()) throw ParameterError("sweep spec: top level must be an object");
  static const char* known[] = {"algorithms", "functions",      "n",           "k",
                                "s",          "runs",           "seed",        "landscape_seed",
                                "pop_size",   "evals",          "trace_interval", "write_traces",
                                "output_dir"};
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return key == k; }) == std::end(known)) {
      throw ParameterError("sweep spec: unknown field '" + key + "'");
    }
  }
  ExperimentSpec spec;
  try {
    for (const auto& name : detail::list_field<std::string>(j, "algorithms")) {
      const auto a = parse_algorithm(name);
      if (!a) throw ParameterError("sweep spec: unknown algorithm '" + name + "'");
      spec.algorithms.push_back(*a);
    }
    if (j.contains("functions")) spec.functions = detail::list_field<std::string>(j, "functions");
    spec.n = detail::list_field<std::size_t>(j, "n");
    if (j.contains("k")) spec.k = detail::list_field<std::size_t>(j, "k");
    if (j.contains("s")) spec.s = detail::list_field<std::size_t>(j, "s");
    spec.runs = j.value("runs", spec.runs);
    spec.seed = j.value("seed", spec.seed);
    if (j.contains("landscape_seed")) spec.landscape_seed = j.at("landscape_seed").get<std::uint64_t>();
    spec.pop_size = j.value("pop_size", spec.pop_size);
    spec.evals = j.value("evals", spec.evals);
    spec.trace_interval = j.value("trace_interval", spec.trace_interval);
    spec.write_traces = j.value("write_traces", spec.write_traces);
    if (j.contains("output_dir")) spec.output_dir = j.at("output_dir").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("sweep spec: ") + e.what());
  }
  for (const auto& f : spec.functions) {
    if (f != "nk" && !parse_benchmark(f)) {
      throw ParameterError("sweep spec: unknown function '" + f + "'");
    }
  }
  if (spec.runs < 1) throw ParameterError("sweep spec: 'runs' must be >= 1");
  return spec;
}

inline ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open sweep spec '" + path.string() + "'");
  try {
    return parse_experiment_spec(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError("sweep spec: invalid JSON: " + std::string(e.what()));
  }
}

/// Seed of the landscape shared by every cell with the same (n, k).
inline std::uint64_t landscape_seed_for(std::uint64_t base, std::size_t n, std::size_t k) {
  return derive_seed(base ^ 0x4E4B4C414E445343ULL, n, k);
}

inline std::vector<Cell> expand(const ExperimentSpec& spec) {
  std::vector<Cell> cells;
  for (const auto a : spec.algorithms) {
    for (const auto& f : spec.functions) {
      for (const auto n : spec.n) {
        std::vector<std::optional<std::size_t>> ks;
        if (f == "nk") {
          for (const auto k : spec.k) ks.emplace_back(k);
        } else {
          ks.emplace_back(std::nullopt);
        }
        for (const auto& k : ks) {
          for (const auto s : spec.s) {
            Cell c;
            c.id = cells.size();
            c.config.algorithm = a;
            c.config.s = s;
            c.config.pop_size = spec.pop_size;
            c.config.eval_budget = spec.evals;
            c.config.master_seed = spec.seed;
            c.config.cell_id = c.id;
            c.config.trace_interval = spec.trace_interval;
            c.function = f;
            c.n = n;
            c.k = k;
            c.runs = spec.runs;
            cells.push_back(c);
          }
        }
      }
    }
  }
  return cells;
}

/// Fail-fast check of every cell; throws on the first invalid one.
inline void validate_cells(const std::vector<Cell>& cells) {
  for (const auto& c : cells) {
    const std::string where = "cell " + std::to_string(c.id) + " (" +
                              std::string(to_string(c.config.algorithm)) + ", " + c.function +
                              ", n=" + std::to_string(c.n) + "): ";
    try {
      if (c.function == "nk") {
        if (c.n < 1) throw ParameterError("NK landscape needs n >= 1");
        if (*c.k >= c.n) {
          throw ParameterError("NK landscape requires k <= n-1 (k = " + std::to_string(*c.k) + ")");
        }
      } else {
        BenchmarkProblem check(*parse_benchmark(c.function), c.n);
      }
      validate(c.config, c.n);
    } catch (const ResourceError&) {
      throw;
    } catch (const Error& e) {
      throw ParameterError(where + e.what());
    }
  }
}

struct SweepOutcome {
  std::vector<CellResult> cells;
  bool all_ok() const {
    return std::all_of(cells.begin(), cells.end(), [](const CellResult& c) { return c.ok; });
  }
};

inline std::string sweep_summary_csv(const std::vector<CellResult>& cells) {
  std::string out = "cell_id,algorithm,function,n,k,s,runs,mean,std,status,message\n";
  for (const auto& c : cells) {
    out += std::to_string(c.cell.id) + ',' + std::string(to_string(c.cell.config.algorithm)) +
           ',' + c.cell.function + ',' + std::to_string(c.cell.n) + ',' +
           (c.cell.k ? std::to_string(*c.cell.k) : "") + ',' + std::to_string(c.cell.config.s) +
           ',';
    if (c.ok) {
      std::vector<double> v;
      for (const auto& r : c.runs) v.push_back(r.best_fitness);
      const auto sum = summarize(v);
      out += std::to_string(sum.count) + ',' + format_real(sum.mean) + ',' +
             format_real(sum.std_dev) + ",ok,\n";
    } else {
      std::string msg = c.error;
      for (auto& ch : msg) {
        if (ch == ',' || ch == '\n') ch = ';';
      }
      out += "0,,,failed," + msg + "\n";
    }
  }
  return out;
}

/// Expands, validates and runs a sweep, then writes into `spec.output_dir`:
/// results.csv (all rows by cell then run), summary.csv (one row per cell),
/// cells/cell_<id>.csv, and traces/cell_<id>_run_<r>.csv when requested.
inline SweepOutcome run_sweep(const ExperimentSpec& spec, std::size_t jobs) {
  const auto cells = expand(spec);
  validate_cells(cells);

  std::vector<std::optional<Objective>> objectives(cells.size());
  std::vector<std::string> errors(cells.size());
  std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const NkLandscape>> landscapes;
  std::map<std::pair<std::size_t, std::size_t>, std::string> landscape_errors;
  const std::uint64_t base = spec.landscape_seed.value_or(spec.seed);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    if (c.function != "nk") {
      objectives[i] = Objective::benchmark(*parse_benchmark(c.function), c.n);
      continue;
    }
    const auto key = std::make_pair(c.n, *c.k);
    if (!landscapes.contains(key) && !landscape_errors.contains(key)) {
      try {
        landscapes[key] = std::make_shared<const NkLandscape>(
            NkLandscape::generate(c.n, *c.k, landscape_seed_for(base, c.n, *c.k)));
      } catch (const std::exception& e) {
        landscape_errors[key] = e.what();
      }
    }
    if (landscapes.contains(key)) {
      objectives[i] = Objective::nk(landscapes[key]);
    } else {
      errors[i] = landscape_errors[key];
    }
  }

  SweepOutcome outcome{run_cells(cells, objectives, errors, jobs)};
  std::vector<RunRecord> all;
  for (const auto& c : outcome.cells) {
    write_text(spec.output_dir / "cells" / ("cell_" + std::to_string(c.cell.id) + ".csv"),
               results_csv(c.runs));
    for (const auto& r : c.runs) {
      all.push_back(r);
      if (spec.write_traces) {
        write_text(spec.output_dir / "traces" /
                       ("cell_" + std::to_string(c.cell.id) + "_run_" +
                        std::to_string(r.run_index) + ".csv"),
                   trace_csv(r.trace));
      }
    }
  }
  write_text(spec.output_dir / "results.csv", results_csv(all));
  write_text(spec.output_dir / "summary.csv", sweep_summary_csv(outcome.cells));
  return outcome;
}

}  // namespace gcea
