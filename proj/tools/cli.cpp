#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "smartsort/smartsort.hpp"

namespace smartsort::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SortConfig make_config(double t1, double t2) {
  try {
    return SortConfig(t1, t2);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

fs::path default_out_dir() {
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return "smartsort_out";
}

std::ofstream open_output(const fs::path& path, bool binary) {
  std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
  std::string dist;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> m, k;
  std::optional<double> p, lambda, lo, hi, theta, mu, sigma;
  std::string out;
  bool binary = false;
};

DistributionSpec spec_from(const GenOptions& o) {
  DistributionSpec spec;
  try {
    spec = parse_distribution(o.dist);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  auto reject = [&](bool given, const char* flag) {
    if (given) throw UsageError(std::string(flag) + " does not apply to " + kind_name(spec));
  };
  if (auto* d = std::get_if<dist::Binomial>(&spec)) {
    if (o.m) d->m = *o.m;
    if (o.p) d->p = *o.p;
  } else {
    reject(o.m.has_value(), "--m");
    reject(o.p.has_value(), "--p");
  }
  if (auto* d = std::get_if<dist::Poisson>(&spec)) {
    if (o.lambda) d->lambda = *o.lambda;
  } else {
    reject(o.lambda.has_value(), "--lambda");
  }
  if (auto* d = std::get_if<dist::DiscreteUniform>(&spec)) {
    if (o.k) d->k = *o.k;
  } else {
    reject(o.k.has_value(), "--k");
  }
  if (auto* d = std::get_if<dist::ContinuousUniform>(&spec)) {
    if (o.lo) d->lo = *o.lo;
    if (o.hi) d->hi = *o.hi;
  } else {
    reject(o.lo.has_value(), "--lo");
    reject(o.hi.has_value(), "--hi");
  }
  if (auto* d = std::get_if<dist::Exponential>(&spec)) {
    if (o.theta) d->theta = *o.theta;
  } else {
    reject(o.theta.has_value(), "--theta");
  }
  if (auto* d = std::get_if<dist::StandardNormal>(&spec)) {
    if (o.mu) d->mu = *o.mu;
    if (o.sigma) d->sigma = *o.sigma;
  } else {
    reject(o.mu.has_value(), "--mu");
    reject(o.sigma.has_value(), "--sigma");
  }
  try {
    validate(spec);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  return spec;
}

void cmd_gen(const GenOptions& o, std::ostream& out) {
  const DistributionSpec spec = spec_from(o);
  const Keys keys = generate(spec, o.n, Seed{o.seed});
  if (o.out.empty()) {
    o.binary ? write_binary(out, keys) : write_text(out, keys);
    return;
  }
  auto f = open_output(o.out, o.binary);
  o.binary ? write_binary(f, keys) : write_text(f, keys);
  if (!f) throw std::runtime_error("write failed: " + o.out);
}

// ---------------------------------------------------------------------------
// sort

struct SortOptions {
  std::string in;
  std::string out;
  std::string algorithm = "smart_sort";
  double t1 = SortConfig::kDefaultThreshold;
  double t2 = SortConfig::kDefaultThreshold;
  bool binary = false;
};

void cmd_sort(const SortOptions& o, std::ostream& out) {
  Algorithm algorithm{};
  try {
    algorithm = parse_algorithm(o.algorithm);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  const SortConfig config = make_config(o.t1, o.t2);

  std::ifstream in(o.in, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + o.in);
  Keys keys = read_keys(in);
  const CostSample s = measure(algorithm, keys, config);

  auto f = open_output(o.out, o.binary);
  o.binary ? write_binary(f, keys) : write_text(f, keys);
  if (!f) throw std::runtime_error("write failed: " + o.out);

  out << "algorithm=" << algorithm_name(algorithm) << " n=" << s.n
      << " comparisons=" << s.counters.comparisons << " assignments=" << s.counters.assignments
      << " partition_calls=" << s.counters.partition_calls
      << " balance_activations=" << s.counters.balance_activations
      << " root_exchanges=" << s.counters.root_exchanges
      << " max_depth=" << s.counters.max_recursion_depth << " elapsed_s=" << s.elapsed << '\n';
}

// ---------------------------------------------------------------------------
// bench / report

struct BenchOptions {
  std::string plan_file;
  std::string preset;
  std::vector<std::size_t> sizes;
  std::optional<std::size_t> trials;
  std::vector<std::string> distributions;
  std::vector<std::string> algorithms;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<double> t1, t2;
  std::string response = "elapsed_s";
  std::string out_dir;
};

void print_fits(std::ostream& out, const std::vector<SeriesFit>& fits) {
  for (const auto& f : fits) {
    out << algorithm_name(f.algorithm) << "  " << f.distribution << "  " << response_name(f.response)
        << "  ->  O(" << model_name(f.fit.selected) << ")\n";
  }
}

std::vector<SeriesFit> fits_for(const ExperimentResult& result, Response response) {
  std::vector<SeriesFit> fits;
  bool have_points = true;
  for (const auto& c : result.cells) {
    const Series s = series_of(result, c.algorithm, c.distribution, response);
    if (s.xs.size() < 4) have_points = false;
  }
  // Fewer than 4 sizes: emit data without fits.
  if (!have_points || result.cells.empty()) return fits;
  fits = fit_all(result, response);
  if (response != Response::elapsed) {
    auto timing = fit_all(result, Response::elapsed);
    fits.insert(fits.end(), timing.begin(), timing.end());
  }
  return fits;
}

void cmd_bench(const BenchOptions& o, std::ostream& out) {
  ExperimentPlan plan;
  Response response{};
  try {
    response = parse_response(o.response);
    if (!o.plan_file.empty()) {
      plan = load_plan(o.plan_file);
    } else if (o.preset == "reference") {
      plan = ExperimentPlan::reference();
    } else if (o.preset.empty() || o.preset == "desk") {
      plan = ExperimentPlan::desk();
    } else {
      throw UsageError("unknown preset: " + o.preset);
    }
    if (!o.sizes.empty()) plan.sizes = o.sizes;
    if (o.trials) plan.trials = *o.trials;
    if (!o.distributions.empty()) {
      plan.distributions.clear();
      for (const auto& d : o.distributions) plan.distributions.push_back(parse_distribution(d));
    }
    if (!o.algorithms.empty()) {
      plan.algorithms.clear();
      for (const auto& a : o.algorithms) plan.algorithms.push_back(parse_algorithm(a));
    }
    if (o.seed) plan.base_seed = Seed{*o.seed};
    if (o.threads) plan.threads = *o.threads;
    if (o.t1 || o.t2) {
      plan.config = make_config(o.t1.value_or(plan.config.t1()), o.t2.value_or(plan.config.t2()));
    }
    plan.validate();
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }

  const fs::path dir = o.out_dir.empty() ? default_out_dir() : fs::path(o.out_dir);
  ExperimentResult result;
  try {
    result = run(plan);
  } catch (const PartialResultError& e) {
    report(e.partial(), {}, dir);
    throw;
  }
  const auto fits = fits_for(result, response);
  const ReportFiles files = report(result, fits, dir);
  out << "cells: " << result.cells.size() << "  samples: " << result.samples.size() << '\n';
  print_fits(out, fits);
  out << "results: " << files.cells_csv.string() << '\n';
}

struct ReportOptions {
  std::string samples;
  double trim = 0.05;
  std::string response = "elapsed_s";
  std::string out_dir;
};

void cmd_report(const ReportOptions& o, std::ostream& out) {
  Response response{};
  try {
    response = parse_response(o.response);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  if (!(o.trim >= 0.0 && o.trim < 0.5)) throw UsageError("--trim must lie in [0, 0.5)");
  ExperimentResult result;
  result.samples = samples_from_table(read_csv_file(o.samples));
  result.cells = aggregate(result.samples, o.trim);
  const auto fits = fits_for(result, response);
  const fs::path dir = o.out_dir.empty() ? default_out_dir() : fs::path(o.out_dir);
  const ReportFiles files = report(result, fits, dir);
  print_fits(out, fits);
  out << "results: " << files.cells_csv.string() << '\n';
}

// ---------------------------------------------------------------------------
// fit

struct FitOptions {
  std::string input;
  std::string column;
  std::string x = "n";
  std::vector<std::string> where;
  std::string algorithm;
  std::string distribution;
  std::string json;
};

void cmd_fit(const FitOptions& o, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> filters;
  for (const auto& w : o.where) {
    const auto eq = w.find('=');
    if (eq == std::string::npos) throw UsageError("--where expects column=value, got " + w);
    filters.emplace_back(w.substr(0, eq), w.substr(eq + 1));
  }
  if (!o.algorithm.empty()) filters.emplace_back("algorithm", o.algorithm);
  if (!o.distribution.empty()) filters.emplace_back("distribution", o.distribution);

  const CsvTable table = read_csv_file(o.input);
  const Series s = series_from_table(table, o.x, o.column, filters);
  SeriesFit f;
  f.distribution = o.column;
  f.response = Response::elapsed;
  f.fit = fit_empirical_o(s.xs, s.ys);

  using detail::format_number;
  out << "input: " << o.input << "  column: " << o.column << "  points: " << s.xs.size() << '\n';
  for (const auto& c : f.fit.candidates) {
    out << "  " << (c.model == f.fit.selected ? '*' : ' ') << ' ' << model_name(c.model)
        << "  a=" << format_number(c.a) << "  b=" << format_number(c.b)
        << "  rss=" << format_number(c.rss) << "  aicc=" << format_number(c.aicc)
        << "  r2=" << format_number(c.r_squared) << '\n';
  }
  out << "selected: O(" << model_name(f.fit.selected) << ")  b=" << format_number(f.fit.best().b)
      << " +/- " << format_number(f.fit.best().se_b) << '\n';

  if (!o.json.empty()) {
    nlohmann::json j = fit_to_json(f);
    j.erase("algorithm");
    j.erase("response");
    j.erase("distribution");
    j["input"] = o.input;
    j["column"] = o.column;
    auto file = open_output(o.json, false);
    file << j.dump(2) << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smart Sort laboratory: generate inputs, sort, benchmark, fit growth models"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded input sequence");
  gen_cmd->add_option("--dist", gen.dist,
                      "binomial, poisson, discrete_uniform, continuous_uniform (uniform01), "
                      "exponential, standard_normal (normal), sorted_ascending, "
                      "sorted_descending, all_equal; parameters may follow as name:key=value,...")
      ->required();
  gen_cmd->add_option("--n", gen.n, "Number of keys")->required();
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("--m", gen.m, "Binomial trials");
  gen_cmd->add_option("--p", gen.p, "Binomial success probability");
  gen_cmd->add_option("--lambda", gen.lambda, "Poisson rate");
  gen_cmd->add_option("--k", gen.k, "Discrete uniform upper bound");
  gen_cmd->add_option("--lo", gen.lo, "Continuous uniform lower bound");
  gen_cmd->add_option("--hi", gen.hi, "Continuous uniform upper bound");
  gen_cmd->add_option("--theta", gen.theta, "Exponential mean");
  gen_cmd->add_option("--mu", gen.mu, "Normal mean");
  gen_cmd->add_option("--sigma", gen.sigma, "Normal standard deviation");
  gen_cmd->add_option("--out", gen.out, "Output file (default: standard output)");
  gen_cmd->add_flag("--binary", gen.binary, "Write the binary key format");

  SortOptions sort;
  auto* sort_cmd = app.add_subcommand("sort", "Sort a key file and print operation counts");
  sort_cmd->add_option("--in", sort.in, "Input key file (text or binary)")->required();
  sort_cmd->add_option("--out", sort.out, "Output key file")->required();
  sort_cmd->add_option("--algorithm", sort.algorithm,
                       "smart_sort, quicksort_classic, heapsort_floyd, oracle_sort");
  sort_cmd->add_option("--t1", sort.t1, "Left skew threshold in [0, 0.5]");
  sort_cmd->add_option("--t2", sort.t2, "Right skew threshold in [0, 0.5]");
  sort_cmd->add_flag("--binary", sort.binary, "Write the binary key format");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a computer experiment and write a report");
  bench_cmd->add_option("--plan", bench.plan_file, "Plan file (key = value lines)");
  bench_cmd->add_option("--preset", bench.preset, "desk (default) or reference");
  bench_cmd->add_option("--sizes", bench.sizes, "Size grid")->delimiter(',');
  bench_cmd->add_option("--trials", bench.trials, "Trials per cell");
  bench_cmd->add_option("--dist", bench.distributions, "Distribution (repeatable)");
  bench_cmd->add_option("--algorithms", bench.algorithms, "Algorithms")->delimiter(',');
  bench_cmd->add_option("--seed", bench.seed, "Base seed");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads");
  bench_cmd->add_option("--t1", bench.t1, "Left skew threshold");
  bench_cmd->add_option("--t2", bench.t2, "Right skew threshold");
  bench_cmd->add_option("--response", bench.response,
                        "Response to fit: elapsed_s, comparisons, assignments");
  bench_cmd->add_option("--out-dir", bench.out_dir,
                        std::string("Output directory (default: $") + kOutDirEnv +
                            " or ./smartsort_out)");

  ReportOptions rep;
  auto* report_cmd = app.add_subcommand("report", "Rebuild the report from a samples CSV");
  report_cmd->add_option("--samples", rep.samples, "samples.csv from bench")->required();
  report_cmd->add_option("--trim", rep.trim, "Trimmed-mean fraction per tail");
  report_cmd->add_option("--response", rep.response, "Response to fit");
  report_cmd->add_option("--out-dir", rep.out_dir, "Output directory");

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit growth models to a CSV column");
  fit_cmd->add_option("--input", fit.input, "CSV file with a header row")->required();
  fit_cmd->add_option("--column", fit.column, "Response column")->required();
  fit_cmd->add_option("--x", fit.x, "Size column (default n)");
  fit_cmd->add_option("--where", fit.where, "Row filter column=value (repeatable)");
  fit_cmd->add_option("--algorithm", fit.algorithm, "Shortcut for --where algorithm=...");
  fit_cmd->add_option("--distribution", fit.distribution, "Shortcut for --where distribution=...");
  fit_cmd->add_option("--json", fit.json, "Also write the fit as JSON");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) cmd_gen(gen, out);
    if (sort_cmd->parsed()) cmd_sort(sort, out);
    if (bench_cmd->parsed()) cmd_bench(bench, out);
    if (report_cmd->parsed()) cmd_report(rep, out);
    if (fit_cmd->parsed()) cmd_fit(fit, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}

}  // namespace smartsort::cli
