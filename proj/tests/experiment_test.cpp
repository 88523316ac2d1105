#include "smartsort/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"

namespace smartsort {
namespace {

namespace fs = std::filesystem;

ExperimentPlan tiny_plan() {
  ExperimentPlan plan;
  plan.sizes = {100};
  plan.trials = 2;
  plan.distributions = {dist::ContinuousUniform{}};
  return plan;
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("smartsort_exp_" + name);
  fs::remove_all(dir);
  return dir;
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

TEST(Run, SingleCell) {
  const auto result = run(tiny_plan());
  ASSERT_EQ(result.cells.size(), 1u);
  EXPECT_EQ(result.cells[0].trials, 2u);
  EXPECT_EQ(result.cells[0].n, 100u);
  EXPECT_EQ(result.samples.size(), 2u);
  EXPECT_GT(result.cells[0].mean.comparisons, 0.0);
}

TEST(Run, CountersDeterministic) {
  auto plan = tiny_plan();
  plan.sizes = {50, 200};
  plan.trials = 3;
  plan.algorithms = {Algorithm::smart_sort, Algorithm::heapsort_floyd};
  plan.distributions = reference_distributions();
  const auto a = run(plan);
  plan.threads = 3;
  const auto b = run(plan);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].counters, b.samples[i].counters);
    EXPECT_EQ(a.samples[i].seed, b.samples[i].seed);
    EXPECT_EQ(a.samples[i].distribution, b.samples[i].distribution);
  }
}

TEST(Run, AlgorithmsShareInputs) {
  auto plan = tiny_plan();
  plan.algorithms = {Algorithm::smart_sort, Algorithm::quicksort_classic};
  const auto result = run(plan);
  ASSERT_EQ(result.samples.size(), 4u);
  EXPECT_EQ(result.samples[0].seed, result.samples[2].seed);
  EXPECT_EQ(result.samples[1].seed, result.samples[3].seed);
}

TEST(Run, InvalidPlanRejected) {
  auto plan = tiny_plan();
  plan.sizes = {200, 100};
  EXPECT_THROW(run(plan), ParameterError);
  plan = tiny_plan();
  plan.trials = 0;
  EXPECT_THROW(run(plan), ParameterError);
}

TEST(Aggregate, TrimmedMean) {
  EXPECT_DOUBLE_EQ(trimmed_mean({1, 2, 3, 4, 100}, 0.2), 3.0);
  EXPECT_DOUBLE_EQ(trimmed_mean({1, 2, 3, 4, 100}, 0.1), 22.0);
  EXPECT_DOUBLE_EQ(trimmed_mean({}, 0.1), 0.0);
  EXPECT_NEAR(sample_sd({2, 4, 4, 4, 5, 5, 7, 9}), 2.13809, 1e-5);
}

// ---------------------------------------------------------------------------
// Fitter

std::vector<double> sizes(int count) {
  std::vector<double> xs;
  for (int i = 1; i <= count; ++i) xs.push_back(1000.0 * i);
  return xs;
}

TEST(Fit, ExactLinear) {
  const auto xs = sizes(10);
  const auto report = fit_empirical_o(xs, xs);
  EXPECT_EQ(report.selected, GrowthModel::linear);
  EXPECT_NEAR(report.best().b, 1.0, 1e-9);
  EXPECT_NEAR(report.best().a, 0.0, 1e-9 * xs.back());
}

TEST(Fit, RecoversCoefficient) {
  const auto xs = sizes(10);
  std::vector<double> ys;
  for (const double n : xs) ys.push_back(3.0 * n * std::log2(n));
  const auto report = fit_empirical_o(xs, ys);
  EXPECT_EQ(report.selected, GrowthModel::n_log_n);
  EXPECT_NEAR(report.best().b, 3.0, 1e-6);
  EXPECT_EQ(report.candidates.size(), 4u);
}

TEST(Fit, QuadraticAndLogSquared) {
  const auto xs = sizes(10);
  std::vector<double> quad, lsq;
  for (const double n : xs) {
    quad.push_back(0.5 * n * n + 7.0);
    lsq.push_back(n * std::log2(n) * std::log2(n));
  }
  EXPECT_EQ(fit_empirical_o(xs, quad).selected, GrowthModel::quadratic);
  EXPECT_EQ(fit_empirical_o(xs, lsq).selected, GrowthModel::n_log2_n);
}

TEST(Fit, TooFewPoints) {
  const std::vector<double> xs{1, 2, 3}, ys{1, 2, 3};
  EXPECT_THROW(fit_empirical_o(xs, ys), InsufficientDataError);
}

TEST(Fit, RejectsBadInput) {
  const std::vector<double> xs{1, 2, 3, 4};
  const std::vector<double> nan{1, std::numeric_limits<double>::quiet_NaN(), 3, 4};
  const std::vector<double> neg{1, -2, 3, 4};
  const std::vector<double> unsorted{1, 3, 2, 4};
  EXPECT_THROW(fit_empirical_o(xs, nan), std::invalid_argument);
  EXPECT_THROW(fit_empirical_o(xs, neg), std::invalid_argument);
  EXPECT_THROW(fit_empirical_o(unsorted, xs), std::invalid_argument);
}

TEST(Fit, TiesGoToSlowerModel) {
  const auto xs = sizes(6);
  const std::vector<double> flat(xs.size(), 5.0);
  EXPECT_EQ(fit_empirical_o(xs, flat).selected, GrowthModel::linear);
}

// ---------------------------------------------------------------------------
// Plans

TEST(Plan, Presets) {
  const auto ref = ExperimentPlan::reference();
  EXPECT_EQ(ref.sizes.size(), 10u);
  EXPECT_EQ(ref.sizes.front(), 10000u);
  EXPECT_EQ(ref.sizes.back(), 100000u);
  EXPECT_EQ(ref.trials, 100u);
  EXPECT_EQ(ref.distributions.size(), 6u);
  EXPECT_EQ(ExperimentPlan::desk().trials, 20u);
}

TEST(Plan, ParsesKeys) {
  std::istringstream in(
      "# comment\n"
      "sizes = 100:300:100\n"
      "trials = 4   # inline\n"
      "distribution = poisson:lambda=2\n"
      "distribution = normal\n"
      "algorithms = smart_sort, heapsort_floyd\n"
      "seed = 5\n"
      "t1 = 0.1\n"
      "threads = 2\n"
      "trim = 0\n");
  const auto plan = parse_plan(in);
  EXPECT_EQ(plan.sizes, (std::vector<std::size_t>{100, 200, 300}));
  EXPECT_EQ(plan.trials, 4u);
  ASSERT_EQ(plan.distributions.size(), 2u);
  EXPECT_EQ(describe(plan.distributions[0]), "poisson:lambda=2");
  EXPECT_EQ(plan.algorithms.size(), 2u);
  EXPECT_EQ(plan.base_seed.value, 5u);
  EXPECT_DOUBLE_EQ(plan.config.t1(), 0.1);
  EXPECT_DOUBLE_EQ(plan.config.t2(), 0.01);
  EXPECT_EQ(plan.threads, 2u);
}

TEST(Plan, ErrorsNameTheLine) {
  std::istringstream in("trials = 3\nfrobnicate = 1\n");
  try {
    parse_plan(in);
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("plan line 2"), std::string::npos);
  }
  std::istringstream bad_t("t1 = 0.7\n");
  EXPECT_THROW(parse_plan(bad_t), ParameterError);
}

TEST(Plan, ShippedPlansLoad) {
  const auto desk = load_plan(fs::path(SMARTSORT_DATA_DIR) / "desk.plan");
  EXPECT_EQ(desk.trials, 20u);
  EXPECT_EQ(desk.distributions.size(), 6u);
  const auto ref = load_plan(fs::path(SMARTSORT_DATA_DIR) / "reference.plan");
  EXPECT_EQ(ref.trials, 100u);
}

// ---------------------------------------------------------------------------
// CSV and reports

TEST(Csv, QuotedFields) {
  std::istringstream in("a,b\n\"x,y\",2\n\"say \"\"hi\"\"\",3\n");
  const auto t = read_csv(in);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][0], "x,y");
  EXPECT_EQ(t.rows[1][0], "say \"hi\"");
  EXPECT_THROW(t.column("c"), FormatError);
}

TEST(Csv, FixtureLoadsAsPrinted) {
  const auto t = read_csv_file(fs::path(SMARTSORT_DATA_DIR) / "table1.csv");
  EXPECT_EQ(t.header.size(), 7u);
  EXPECT_EQ(t.rows.size(), 10u);
  const auto s = series_from_table(t, "n", "exponential");
  EXPECT_DOUBLE_EQ(s.xs.front(), 10000.0);
  EXPECT_DOUBLE_EQ(s.ys.front(), 0.149);
  EXPECT_DOUBLE_EQ(s.xs.back(), 100000.0);
}

TEST(Csv, SamplesRoundTrip) {
  auto plan = tiny_plan();
  plan.distributions = {dist::Binomial{}};
  const auto result = run(plan);
  std::ostringstream out;
  write_samples_csv(out, result.samples);
  std::istringstream in(out.str());
  const auto back = samples_from_table(read_csv(in));
  ASSERT_EQ(back.size(), result.samples.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    // partition_calls is not a sample column.
    auto expected = result.samples[i].counters;
    expected.partition_calls = 0;
    EXPECT_EQ(back[i].counters, expected);
    EXPECT_EQ(back[i].seed, result.samples[i].seed);
    EXPECT_EQ(back[i].distribution, result.samples[i].distribution);
  }
}

TEST(Report, EmptyResultWritesHeaders) {
  const auto dir = scratch_dir("empty");
  const auto files = report(ExperimentResult{}, {}, dir);
  EXPECT_EQ(line_count(files.cells_csv), 1u);
  EXPECT_EQ(line_count(files.samples_csv), 1u);
  EXPECT_TRUE(files.figures.empty());
}

TEST(Report, OneCell) {
  const auto dir = scratch_dir("one");
  const auto files = report(run(tiny_plan()), {}, dir);
  EXPECT_EQ(line_count(files.cells_csv), 2u);
  EXPECT_EQ(line_count(files.samples_csv), 3u);
  EXPECT_EQ(files.figures.size(), 1u);
}

TEST(Report, FigurePerDistribution) {
  auto plan = tiny_plan();
  plan.sizes = {100, 200, 300, 400};
  plan.distributions = reference_distributions();
  const auto result = run(plan);
  const auto fits = fit_all(result, Response::elapsed);
  EXPECT_EQ(fits.size(), 6u);
  const auto dir = scratch_dir("six");
  const auto files = report(result, fits, dir);
  ASSERT_EQ(files.figures.size(), 6u);
  for (const auto& f : files.figures) {
    EXPECT_TRUE(fs::exists(f));
    EXPECT_EQ(line_count(f), 1u + 4u + 2u + 1u + 50u) << f;
  }
  std::ifstream js(files.fits_json);
  const auto parsed = nlohmann::json::parse(js);
  EXPECT_EQ(parsed.size(), 6u);
}

}  // namespace
}  // namespace smartsort
