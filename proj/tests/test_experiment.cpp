#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gcea/experiment.hpp>

namespace fs = std::filesystem;
using namespace gcea;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("gcea_exp_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ExperimentSpec small_spec(const fs::path& out) {
  ExperimentSpec spec;
  spec.algorithms = {Algorithm::ea, Algorithm::gcea};
  spec.functions = {"nk"};
  spec.n = {40};
  spec.k = {0, 2, 4};
  spec.s = {2};
  spec.runs = 10;
  spec.seed = 5;
  spec.evals = 600;
  spec.output_dir = out;
  return spec;
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST(FormatReal, RoundTrips) {
  for (const double v : {0.1, 1.0 / 3.0, 0.6917283746, -3.5e-12, 123456789.0}) {
    EXPECT_EQ(std::stod(format_real(v)), v);
  }
  EXPECT_EQ(format_real(0.5), "0.5");
}

TEST(Expand, GridCountsAndOrder) {
  const auto cells = expand(small_spec("x"));
  ASSERT_EQ(cells.size(), 6u);
  for (std::size_t i = 0; i < cells.size(); ++i) EXPECT_EQ(cells[i].id, i);
  EXPECT_EQ(cells[0].config.algorithm, Algorithm::ea);
  EXPECT_EQ(*cells[2].k, 4u);
  EXPECT_EQ(cells[3].config.algorithm, Algorithm::gcea);

  auto spec = small_spec("x");
  spec.functions = {"nk", "sphere"};
  EXPECT_EQ(expand(spec).size(), 2u * (3u + 1u));
}

TEST(Sweep, RowCountAndSummary) {
  const auto dir = scratch("rows");
  const auto outcome = run_sweep(small_spec(dir), 1);
  EXPECT_TRUE(outcome.all_ok());
  EXPECT_EQ(line_count(slurp(dir / "results.csv")), 1u + 60u);
  EXPECT_EQ(line_count(slurp(dir / "summary.csv")), 1u + 6u);
  EXPECT_EQ(line_count(slurp(dir / "cells" / "cell_3.csv")), 1u + 10u);
  EXPECT_EQ(slurp(dir / "results.csv").substr(0, std::string(results_header).size()),
            results_header);
}

TEST(Sweep, OutputIndependentOfJobs) {
  const auto a = scratch("jobs1");
  const auto b = scratch("jobs8");
  auto spec = small_spec(a);
  spec.write_traces = true;
  run_sweep(spec, 1);
  spec.output_dir = b;
  run_sweep(spec, 8);
  EXPECT_EQ(slurp(a / "results.csv"), slurp(b / "results.csv"));
  EXPECT_EQ(slurp(a / "summary.csv"), slurp(b / "summary.csv"));
  EXPECT_EQ(slurp(a / "traces" / "cell_4_run_7.csv"), slurp(b / "traces" / "cell_4_run_7.csv"));
}

TEST(Sweep, InvalidCellFailsBeforeAnyRun) {
  const auto dir = scratch("invalid");
  auto spec = small_spec(dir);
  spec.algorithms = {Algorithm::ea, Algorithm::gcea0};
  spec.s = {3};  // 3 does not divide 40
  EXPECT_THROW(run_sweep(spec, 1), ParameterError);
  EXPECT_FALSE(fs::exists(dir / "results.csv"));
  spec.s = {2};
  spec.k = {0, 40};
  EXPECT_THROW(run_sweep(spec, 1), ParameterError);
}

TEST(Sweep, ResourceFailureIsRecordedPerCell) {
  const auto dir = scratch("partial");
  auto spec = small_spec(dir);
  spec.n = {60};
  spec.k = {2, 50};  // k = 50 exceeds the table memory cap
  spec.runs = 3;
  const auto outcome = run_sweep(spec, 2);
  EXPECT_FALSE(outcome.all_ok());
  std::size_t failed = 0;
  for (const auto& c : outcome.cells) failed += !c.ok;
  EXPECT_EQ(failed, 2u);
  const auto summary = slurp(dir / "summary.csv");
  EXPECT_NE(summary.find("failed"), std::string::npos);
  EXPECT_EQ(line_count(slurp(dir / "results.csv")), 1u + 2u * 3u);
}

TEST(Sweep, CceaBudgetAudit) {
  Cell cell;
  cell.config.algorithm = Algorithm::ccea2;
  cell.config.s = 4;
  cell.config.eval_budget = 2001;
  cell.config.master_seed = 3;
  cell.function = "nk";
  cell.n = 40;
  cell.k = 3;
  cell.runs = 2;
  const auto obj = Objective::nk(std::make_shared<const NkLandscape>(NkLandscape::generate(40, 3, 1)));
  const auto res = run_cells({cell}, {obj}, {""}, 1);
  ASSERT_TRUE(res[0].ok);
  for (const auto& r : res[0].runs) {
    EXPECT_EQ(r.evaluations_used, r.initial_evaluations + 2 * r.offspring);
    EXPECT_EQ(r.initial_evaluations, 200u);
    EXPECT_EQ(r.evaluations_used, 2000u);
  }
}

TEST(SpecFile, ParsesAndRejectsUnknownFields) {
  const auto j = nlohmann::json::parse(R"({"algorithms": ["ea", "ccea1"], "n": [20],
      "k": [1], "s": [2], "runs": 4, "seed": 9, "evals": 500, "output_dir": "o"})");
  const auto spec = parse_experiment_spec(j);
  EXPECT_EQ(spec.algorithms.size(), 2u);
  EXPECT_EQ(spec.runs, 4u);
  EXPECT_EQ(spec.output_dir, fs::path("o"));
  EXPECT_THROW(parse_experiment_spec(nlohmann::json::parse(R"({"algorithms": ["ea"], "n": [5], "bogus": 1})")),
               ParameterError);
  EXPECT_THROW(parse_experiment_spec(nlohmann::json::parse(R"({"algorithms": ["xx"], "n": [5]})")),
               ParameterError);
  EXPECT_THROW(parse_experiment_spec(nlohmann::json::parse(R"({"algorithms": ["ea"], "n": [5], "functions": ["ackley"]})")),
               ParameterError);
}

TEST(Compare, SelfComparisonIsNeverSignificant) {
  const auto dir = scratch("cmp");
  run_sweep(small_spec(dir), 1);
  const auto rows = compare_files({dir / "cells" / "cell_4.csv", dir / "cells" / "cell_4.csv"}, 0.05);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].significant);
  EXPECT_NE(rows[0].label_a, rows[0].label_b);
}

TEST(Compare, MismatchedObjectivesRejected) {
  const auto dir = scratch("cmp_mismatch");
  run_sweep(small_spec(dir), 1);
  EXPECT_THROW(compare_files({dir / "cells" / "cell_0.csv", dir / "cells" / "cell_4.csv"}, 0.05),
               ParameterError);
  EXPECT_THROW(compare_files({dir / "cells" / "cell_0.csv"}, 0.05), ParameterError);
}

TEST(Compare, ReportFormats) {
  const auto dir = scratch("cmp_fmt");
  run_sweep(small_spec(dir), 1);
  const auto rows = compare_files({dir / "cells" / "cell_2.csv", dir / "cells" / "cell_5.csv"}, 0.05);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].label_a, "ea s=2");
  EXPECT_EQ(rows[0].label_b, "gcea s=2");
  const auto csv = comparison_csv(rows);
  EXPECT_EQ(line_count(csv), 2u);
  EXPECT_NE(comparison_text(rows).find("gcea s=2"), std::string::npos);
}

TEST(ResultsCsv, MalformedFilesRejected) {
  const auto dir = scratch("bad_csv");
  std::ofstream(dir / "a.csv") << "algorithm,function\nea,nk\n";
  EXPECT_THROW(read_results_csv(dir / "a.csv"), FormatError);
  std::ofstream(dir / "b.csv") << results_header << "\nea,nk,10,2,2,0,1,notanumber,100\n";
  EXPECT_THROW(read_results_csv(dir / "b.csv"), FormatError);
}
