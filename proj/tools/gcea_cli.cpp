// gcea: command-line front end for global crossover and cooperative
// coevolution experiments.
//
//   gcea gen-landscape --n 1000 --k 8 --seed 7 --out L.json
//   gcea run --algorithm gcea --landscape L.json --s 2 --runs 50 --out gcea.csv
//   gcea sweep grid.json --jobs 8
//   gcea compare ea.csv gcea.csv --alpha 0.05
//
// Exit codes: 0 success, 2 parameter error, 3 resource error, 4 partial sweep failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <gcea/experiment.hpp>
#include <gcea/gcea.hpp>

namespace fs = std::filesystem;

namespace {

struct GenLandscapeArgs {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  fs::path out;
};

struct RunArgs {
  std::string algorithm;
  std::string function;
  fs::path landscape;
  std::optional<std::size_t> n;
  std::size_t k = 0;
  std::optional<std::uint64_t> landscape_seed;
  std::size_t s = 2;
  std::size_t pop_size = 50;
  std::uint64_t evals = 100000;
  std::size_t runs = 50;
  std::uint64_t seed = 0;
  std::uint64_t trace_interval = 1000;
  fs::path out;
  fs::path trace_dir;
  bool no_traces = false;
  std::size_t jobs = 1;
};

struct SweepArgs {
  fs::path spec;
  std::size_t jobs = 1;
  fs::path out_dir;
};

struct CompareArgs {
  std::vector<fs::path> files;
  double alpha = 0.05;
  fs::path out;
};

int cmd_gen_landscape(const GenLandscapeArgs& a) {
  const auto land = gcea::NkLandscape::generate(a.n, a.k, a.seed);
  gcea::save(land, a.out);
  std::cout << "wrote " << a.out.string() << " (n=" << a.n << ", k=" << a.k << ")\n";
  return gcea::exit_codes::ok;
}

int cmd_run(const RunArgs& a) {
  const auto algorithm = gcea::parse_algorithm(a.algorithm);
  if (!algorithm) throw gcea::ParameterError("unknown algorithm '" + a.algorithm + "'");
  if (!a.function.empty() && !a.landscape.empty()) {
    throw gcea::ParameterError("--function and --landscape are mutually exclusive");
  }

  gcea::Cell cell;
  cell.config.algorithm = *algorithm;
  cell.config.s = a.s;
  cell.config.pop_size = a.pop_size;
  cell.config.eval_budget = a.evals;
  cell.config.master_seed = a.seed;
  cell.config.cell_id = 0;
  cell.config.trace_interval = a.trace_interval;
  cell.runs = a.runs;
  if (a.runs < 1) throw gcea::ParameterError("--runs must be >= 1");

  // Everything is validated before the objective is built or evaluated.
  std::shared_ptr<const gcea::NkLandscape> landscape;
  std::optional<gcea::BenchmarkFunction> function;
  if (!a.landscape.empty()) {
    landscape = std::make_shared<const gcea::NkLandscape>(gcea::load_landscape(a.landscape));
    if (a.n && *a.n != landscape->n()) {
      throw gcea::ParameterError("--n " + std::to_string(*a.n) + " does not match landscape n = " +
                                 std::to_string(landscape->n()));
    }
    cell.function = "nk";
    cell.n = landscape->n();
    cell.k = landscape->k();
  } else {
    if (!a.n) throw gcea::ParameterError("--n is required unless --landscape is given");
    cell.n = *a.n;
    if (a.function.empty() || a.function == "nk") {
      cell.function = "nk";
      cell.k = a.k;
    } else {
      function = gcea::parse_benchmark(a.function);
      if (!function) throw gcea::ParameterError("unknown function '" + a.function + "'");
      cell.function = a.function;
    }
  }
  gcea::validate_cells({cell});

  gcea::Objective objective;
  if (cell.function == "nk") {
    if (!landscape) {
      const std::uint64_t lseed = a.landscape_seed.value_or(a.seed);
      landscape = std::make_shared<const gcea::NkLandscape>(
          gcea::NkLandscape::generate(cell.n, *cell.k, lseed));
    }
    objective = gcea::Objective::nk(landscape);
  } else {
    objective = gcea::Objective::benchmark(*function, cell.n);
  }

  const auto results = gcea::run_cells({cell}, {objective}, {""}, a.jobs);
  const auto& res = results.front();
  if (!res.ok) throw gcea::Error(res.error);

  gcea::write_text(a.out, gcea::results_csv(res.runs));
  if (!a.no_traces) {
    fs::path dir = a.trace_dir;
    if (dir.empty()) dir = a.out.parent_path() / (a.out.stem().string() + "_traces");
    for (const auto& r : res.runs) {
      gcea::write_text(dir / ("run_" + std::to_string(r.run_index) + ".csv"),
                       gcea::trace_csv(r.trace));
    }
  }
  std::vector<double> best;
  for (const auto& r : res.runs) best.push_back(r.best_fitness);
  const auto sum = gcea::summarize(best);
  std::cout << gcea::to_string(*algorithm) << " on " << cell.function << " n=" << cell.n
            << ": mean best " << gcea::format_real(sum.mean) << " (std "
            << gcea::format_real(sum.std_dev) << ") over " << sum.count << " runs\n";
  return gcea::exit_codes::ok;
}

int cmd_sweep(const SweepArgs& a) {
  auto spec = gcea::load_experiment_spec(a.spec);
  if (!a.out_dir.empty()) spec.output_dir = a.out_dir;
  const auto outcome = gcea::run_sweep(spec, a.jobs);
  std::size_t failed = 0;
  for (const auto& c : outcome.cells) {
    if (!c.ok) {
      ++failed;
      std::cerr << "cell " << c.cell.id << " failed: " << c.error << "\n";
    }
  }
  std::cout << "sweep: " << outcome.cells.size() << " cells, " << failed << " failed; results in "
            << spec.output_dir.string() << "\n";
  return failed == 0 ? gcea::exit_codes::ok : gcea::exit_codes::partial_failure;
}

int cmd_compare(const CompareArgs& a) {
  const auto rows = gcea::compare_files(a.files, a.alpha);
  std::cout << gcea::comparison_text(rows);
  if (!a.out.empty()) gcea::write_text(a.out, gcea::comparison_csv(rows));
  return gcea::exit_codes::ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Global crossover and cooperative coevolution experiments"};
  app.require_subcommand(1);

  GenLandscapeArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-landscape", "Generate an NK landscape file");
  gen_cmd->add_option("--n", gen.n, "Genome length N")->required();
  gen_cmd->add_option("--k", gen.k, "Epistatic inputs per gene K")->required();
  gen_cmd->add_option("--seed", gen.seed, "Generation seed")->required();
  gen_cmd->add_option("--out", gen.out, "Output JSON file")->required();

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run one configuration several times");
  run_cmd->add_option("--algorithm", run.algorithm, "ea, gcea, gcea0, ccea1, ccea2, ea_kpoint")
      ->required();
  run_cmd->add_option("--function", run.function, "nk, sphere, rastrigin, rosenbrock, dixon_price");
  run_cmd->add_option("--landscape", run.landscape, "NK landscape file");
  run_cmd->add_option("--n", run.n, "Genome length (generates an NK landscape if no file)");
  run_cmd->add_option("--k", run.k, "K for a generated NK landscape");
  run_cmd->add_option("--landscape-seed", run.landscape_seed,
                      "Seed for a generated landscape (default: --seed)");
  run_cmd->add_option("--s", run.s, "Segments, subpopulations, or k-point cuts");
  run_cmd->add_option("--pop-size", run.pop_size, "Population size");
  run_cmd->add_option("--evals", run.evals, "Evaluation budget per run");
  run_cmd->add_option("--runs", run.runs, "Number of runs");
  run_cmd->add_option("--seed", run.seed, "Master seed");
  run_cmd->add_option("--trace-interval", run.trace_interval, "Evaluations between trace rows");
  run_cmd->add_option("--out", run.out, "Results CSV")->required();
  run_cmd->add_option("--trace-dir", run.trace_dir, "Trace directory (default: <out>_traces)");
  run_cmd->add_flag("--no-traces", run.no_traces, "Do not write per-run traces");
  run_cmd->add_option("--jobs", run.jobs, "Worker threads");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a grid of experiments from a JSON spec");
  sweep_cmd->add_option("spec", sweep.spec, "Sweep spec file")->required();
  sweep_cmd->add_option("--jobs", sweep.jobs, "Worker threads");
  sweep_cmd->add_option("--out-dir", sweep.out_dir, "Override the spec's output_dir");

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Pairwise Welch t-tests between result files");
  cmp_cmd->add_option("files", cmp.files, "Result CSV files")->required()->expected(2, -1);
  cmp_cmd->add_option("--alpha", cmp.alpha, "Significance level");
  cmp_cmd->add_option("--out", cmp.out, "Write the comparison table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return gcea::exit_codes::parameter;
  }

  try {
    if (*gen_cmd) return cmd_gen_landscape(gen);
    if (*run_cmd) return cmd_run(run);
    if (*sweep_cmd) return cmd_sweep(sweep);
    if (*cmp_cmd) return cmd_compare(cmp);
  } catch (const gcea::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gcea::exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gcea::exit_codes::parameter;
  }
  return gcea::exit_codes::parameter;
}
