#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "smartsort/fit.hpp"
#include "smartsort/input_gen.hpp"
#include "smartsort/metrics.hpp"
#include "smartsort/smart_sort.hpp"

namespace smartsort {

// ---------------------------------------------------------------------------
// Plans

struct ExperimentPlan {
  std::vector<std::size_t> sizes;
  std::size_t trials = 100;
  std::vector<DistributionSpec> distributions;
  std::vector<Algorithm> algorithms{Algorithm::smart_sort};
  Seed base_seed{20111};
  SortConfig config;
  unsigned threads = 1;
  double trim_fraction = 0.05;  // per tail, applied to elapsed times only

  void validate() const {
    if (sizes.empty()) throw ParameterError("plan: no sizes");
    for (std::size_t i = 1; i < sizes.size(); ++i) {
      if (sizes[i] <= sizes[i - 1]) throw ParameterError("plan: sizes must be strictly increasing");
    }
    if (trials < 1) throw ParameterError("plan: trials must be >= 1");
    if (distributions.empty()) throw ParameterError("plan: no distributions");
    if (algorithms.empty()) throw ParameterError("plan: no algorithms");
    if (threads < 1) throw ParameterError("plan: threads must be >= 1");
    if (!(trim_fraction >= 0.0 && trim_fraction < 0.5)) {
      throw ParameterError("plan: trim must lie in [0, 0.5)");
    }
    for (const auto& d : distributions) smartsort::validate(d);
  }

  /// 10000..100000 step 10000, 100 trials, the six reference distributions,
  /// thresholds 0.01.
  static ExperimentPlan reference() {
    ExperimentPlan plan;
    for (std::size_t n = 10000; n <= 100000; n += 10000) plan.sizes.push_back(n);
    plan.trials = 100;
    plan.distributions = reference_distributions();
    return plan;
  }

  /// Same grid with 20 trials.
  static ExperimentPlan desk() {
    ExperimentPlan plan = reference();
    plan.trials = 20;
    return plan;
  }
};

// Plan files: one `key = value` per line, '#' starts a comment.
//
//   sizes         = 10000, 20000, 30000     (or start:stop:step)
//   trials        = 20
//   distribution  = binomial:m=1000,p=0.5   (repeatable)
//   algorithms    = smart_sort, quicksort_classic
//   seed          = 20111
//   t1 = 0.01, t2 = 0.01 (separate lines), threads = 1, trim = 0.05
//   preset        = reference | desk        (defaults the other keys)
inline ExperimentPlan parse_plan(std::istream& in) {
  ExperimentPlan plan = ExperimentPlan::desk();
  bool saw_distribution = false;
  double t1 = plan.config.t1(), t2 = plan.config.t2();
  std::string line;
  std::size_t line_no = 0;

  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto split = [&](std::string_view s) {
    std::vector<std::string_view> parts;
    while (true) {
      const auto comma = s.find(',');
      parts.push_back(trim(s.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      s.remove_prefix(comma + 1);
    }
    return parts;
  };
  auto fail = [&](const std::string& what) -> void {
    throw ParameterError("plan line " + std::to_string(line_no) + ": " + what);
  };
  auto to_u64 = [&](std::string_view s) {
    std::uint64_t v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) fail("bad integer '" + std::string(s) + "'");
    return v;
  };
  auto to_double = [&](std::string_view s) {
    double v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) fail("bad number '" + std::string(s) + "'");
    return v;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) fail("expected key = value");
    const std::string_view key = trim(s.substr(0, eq));
    const std::string_view value = trim(s.substr(eq + 1));

    if (key == "preset") {
      if (value == "reference") {
        plan = ExperimentPlan::reference();
      } else if (value == "desk") {
        plan = ExperimentPlan::desk();
      } else {
        fail("unknown preset '" + std::string(value) + "'");
      }
      saw_distribution = false;
    } else if (key == "sizes") {
      plan.sizes.clear();
      if (value.find(':') != std::string_view::npos) {
        const auto c1 = value.find(':');
        const auto c2 = value.find(':', c1 + 1);
        if (c2 == std::string_view::npos) fail("sizes range must be start:stop:step");
        const auto start = to_u64(trim(value.substr(0, c1)));
        const auto stop = to_u64(trim(value.substr(c1 + 1, c2 - c1 - 1)));
        const auto step = to_u64(trim(value.substr(c2 + 1)));
        if (step == 0) fail("sizes step must be > 0");
        for (auto n = start; n <= stop; n += step) plan.sizes.push_back(n);
      } else {
        for (const auto part : split(value)) plan.sizes.push_back(to_u64(part));
      }
    } else if (key == "trials") {
      plan.trials = to_u64(value);
    } else if (key == "distribution") {
      if (!saw_distribution) plan.distributions.clear();
      saw_distribution = true;
      try {
        plan.distributions.push_back(parse_distribution(value));
      } catch (const ParameterError& e) {
        fail(e.what());
      }
    } else if (key == "algorithms") {
      plan.algorithms.clear();
      try {
        for (const auto part : split(value)) plan.algorithms.push_back(parse_algorithm(part));
      } catch (const ParameterError& e) {
        fail(e.what());
      }
    } else if (key == "seed") {
      plan.base_seed = Seed{to_u64(value)};
    } else if (key == "t1") {
      t1 = to_double(value);
    } else if (key == "t2") {
      t2 = to_double(value);
    } else if (key == "threads") {
      plan.threads = static_cast<unsigned>(to_u64(value));
    } else if (key == "trim") {
      plan.trim_fraction = to_double(value);
    } else {
      fail("unknown key '" + std::string(key) + "'");
    }
  }
  try {
    plan.config = SortConfig(t1, t2);
  } catch (const std::invalid_argument& e) {
    throw ParameterError(std::string("plan: ") + e.what());
  }
  plan.validate();
  return plan;
}

inline ExperimentPlan load_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open plan file " + path.string());
  return parse_plan(in);
}

// ---------------------------------------------------------------------------
// Results

struct MeanCounters {
  double comparisons = 0.0;
  double assignments = 0.0;
  double balance_activations = 0.0;
  double root_exchanges = 0.0;
  double max_depth = 0.0;
};

struct CellResult {
  Algorithm algorithm = Algorithm::smart_sort;
  std::string distribution;
  std::size_t n = 0;
  std::size_t trials = 0;
  double mean_elapsed = 0.0;  // trimmed mean, seconds
  double sd_elapsed = 0.0;    // sample sd over all trials
  MeanCounters mean;          // untrimmed
};

struct ExperimentResult {
  std::vector<CellResult> cells;
  std::vector<CostSample> samples;

  const CellResult* find(Algorithm algorithm, std::string_view distribution, std::size_t n) const {
    for (const auto& c : cells) {
      if (c.algorithm == algorithm && c.distribution == distribution && c.n == n) return &c;
    }
    return nullptr;
  }
};

class PartialResultError : public std::runtime_error {
 public:
  PartialResultError(const std::string& what, ExperimentResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const ExperimentResult& partial() const noexcept { return partial_; }

 private:
  ExperimentResult partial_;
};

/// Mean after dropping floor(fraction * count) values from each tail.
inline double trimmed_mean(std::vector<double> values, double fraction) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto drop = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(values.size())));
  double sum = 0.0;
  for (std::size_t i = drop; i < values.size() - drop; ++i) sum += values[i];
  return sum / static_cast<double>(values.size() - 2 * drop);
}

inline double sample_sd(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

/// Groups samples into cells by (algorithm, distribution, n), keeping
/// first-seen order.
inline std::vector<CellResult> aggregate(const std::vector<CostSample>& samples,
                                         double trim_fraction) {
  std::vector<CellResult> cells;
  std::vector<std::vector<const CostSample*>> members;
  for (const auto& s : samples) {
    std::size_t idx = 0;
    for (; idx < cells.size(); ++idx) {
      const auto& c = cells[idx];
      if (c.algorithm == s.algorithm && c.distribution == s.distribution && c.n == s.n) break;
    }
    if (idx == cells.size()) {
      CellResult cell;
      cell.algorithm = s.algorithm;
      cell.distribution = s.distribution;
      cell.n = s.n;
      cells.push_back(cell);
      members.emplace_back();
    }
    members[idx].push_back(&s);
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto& cell = cells[i];
    const auto& group = members[i];
    cell.trials = group.size();
    std::vector<double> times;
    for (const auto* s : group) {
      times.push_back(s->elapsed);
      cell.mean.comparisons += static_cast<double>(s->counters.comparisons);
      cell.mean.assignments += static_cast<double>(s->counters.assignments);
      cell.mean.balance_activations += static_cast<double>(s->counters.balance_activations);
      cell.mean.root_exchanges += static_cast<double>(s->counters.root_exchanges);
      cell.mean.max_depth += static_cast<double>(s->counters.max_recursion_depth);
    }
    const auto count = static_cast<double>(group.size());
    cell.mean.comparisons /= count;
    cell.mean.assignments /= count;
    cell.mean.balance_activations /= count;
    cell.mean.root_exchanges /= count;
    cell.mean.max_depth /= count;
    cell.mean_elapsed = trimmed_mean(times, trim_fraction);
    cell.sd_elapsed = sample_sd(times);
  }
  return cells;
}

/// Runs every (distribution, size) work unit: for each trial one input is
/// generated from trial_seed(base, distribution, n, trial) and sorted by a
/// fresh copy for each algorithm. Work units may run on plan.threads
/// threads; output order does not depend on scheduling.
inline ExperimentResult run(const ExperimentPlan& plan) {
  plan.validate();

  struct Unit {
    const DistributionSpec* spec;
    std::size_t n;
  };
  std::vector<Unit> units;
  for (const auto& d : plan.distributions) {
    for (const auto n : plan.sizes) units.push_back({&d, n});
  }

  std::vector<std::vector<CostSample>> unit_samples(units.size());
  std::vector<std::string> unit_errors(units.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t u = next++; u < units.size(); u = next++) {
      const auto& unit = units[u];
      const std::string label = describe(*unit.spec);
      try {
        std::vector<CostSample> out;
        out.reserve(plan.trials * plan.algorithms.size());
        for (std::size_t trial = 0; trial < plan.trials; ++trial) {
          const Seed seed = trial_seed(plan.base_seed, *unit.spec, unit.n, trial);
          const Keys input = generate(*unit.spec, unit.n, seed);
          for (const auto algorithm : plan.algorithms) {
            Keys work = input;
            CostSample s = measure(algorithm, work, plan.config);
            s.distribution = label;
            s.trial = trial;
            s.seed = seed;
            out.push_back(std::move(s));
          }
        }
        unit_samples[u] = std::move(out);
      } catch (const std::exception& e) {
        unit_errors[u] = "cell (" + label + ", n=" + std::to_string(unit.n) + "): " + e.what();
      }
    }
  };

  const unsigned thread_count =
      static_cast<unsigned>(std::min<std::size_t>(plan.threads, units.size()));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
  }

  ExperimentResult result;
  std::string first_error;
  for (std::size_t u = 0; u < units.size(); ++u) {
    if (!unit_errors[u].empty() && first_error.empty()) first_error = unit_errors[u];
    for (auto& s : unit_samples[u]) result.samples.push_back(std::move(s));
  }
  // Cells ordered by algorithm, then distribution, then n.
  std::stable_sort(result.samples.begin(), result.samples.end(),
                   [](const CostSample& a, const CostSample& b) {
                     return static_cast<int>(a.algorithm) < static_cast<int>(b.algorithm);
                   });
  result.cells = aggregate(result.samples, plan.trim_fraction);
  if (!first_error.empty()) {
    throw PartialResultError("experiment incomplete: " + first_error, std::move(result));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Series and fits

enum class Response { elapsed, comparisons, assignments };

inline std::string_view response_name(Response r) {
  switch (r) {
    case Response::elapsed: return "elapsed_s";
    case Response::comparisons: return "comparisons";
    case Response::assignments: return "assignments";
  }
  return "?";
}

inline Response parse_response(std::string_view name) {
  for (const auto r : {Response::elapsed, Response::comparisons, Response::assignments}) {
    if (response_name(r) == name) return r;
  }
  if (name == "elapsed" || name == "time") return Response::elapsed;
  throw ParameterError("unknown response: " + std::string(name));
}

struct Series {
  std::vector<double> xs;
  std::vector<double> ys;
};

inline double response_value(const CellResult& cell, Response r) {
  switch (r) {
    case Response::elapsed: return cell.mean_elapsed;
    case Response::comparisons: return cell.mean.comparisons;
    case Response::assignments: return cell.mean.assignments;
  }
  return 0.0;
}

inline Series series_of(const ExperimentResult& result, Algorithm algorithm,
                        std::string_view distribution, Response response) {
  std::vector<const CellResult*> picked;
  for (const auto& c : result.cells) {
    if (c.algorithm == algorithm && c.distribution == distribution) picked.push_back(&c);
  }
  std::sort(picked.begin(), picked.end(), [](auto* a, auto* b) { return a->n < b->n; });
  Series s;
  for (const auto* c : picked) {
    s.xs.push_back(static_cast<double>(c->n));
    s.ys.push_back(response_value(*c, response));
  }
  return s;
}

struct SeriesFit {
  Algorithm algorithm = Algorithm::smart_sort;
  std::string distribution;
  Response response = Response::elapsed;
  FitReport fit;
};

/// One fit per (algorithm, distribution) present in the result.
inline std::vector<SeriesFit> fit_all(const ExperimentResult& result, Response response) {
  std::vector<SeriesFit> fits;
  for (const auto& c : result.cells) {
    const bool seen = std::any_of(fits.begin(), fits.end(), [&](const SeriesFit& f) {
      return f.algorithm == c.algorithm && f.distribution == c.distribution;
    });
    if (seen) continue;
    const Series s = series_of(result, c.algorithm, c.distribution, response);
    fits.push_back({c.algorithm, c.distribution, response, fit_empirical_o(s.xs, s.ys)});
  }
  return fits;
}

// ---------------------------------------------------------------------------
// CSV tables

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw FormatError("csv: no column named '" + std::string(name) + "'");
  }
  bool has_column(std::string_view name) const {
    return std::find(header.begin(), header.end(), name) != header.end();
  }
};

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

inline double parse_double_field(const std::string& s, std::size_t row) {
  double v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
    throw FormatError("csv row " + std::to_string(row) + ": not a number: '" + s + "'");
  }
  return v;
}

inline std::uint64_t parse_u64_field(const std::string& s, std::size_t row) {
  std::uint64_t v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
    throw FormatError("csv row " + std::to_string(row) + ": not an integer: '" + s + "'");
  }
  return v;
}

}  // namespace detail

inline CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto fields = detail::split_csv_line(line);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw FormatError("csv row " + std::to_string(table.rows.size() + 1) + ": expected " +
                        std::to_string(table.header.size()) + " fields, got " +
                        std::to_string(fields.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (!have_header) throw FormatError("csv: empty input");
  return table;
}

inline CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_csv(in);
}

/// (x, y) pairs from two numeric columns, keeping rows whose columns match
/// every filter (column name, value). Sorted by x.
inline Series series_from_table(const CsvTable& table, std::string_view x_column,
                                std::string_view y_column,
                                const std::vector<std::pair<std::string, std::string>>& filters = {}) {
  const auto xi = table.column(x_column);
  const auto yi = table.column(y_column);
  std::vector<std::pair<std::size_t, std::string>> filter_idx;
  for (const auto& [name, value] : filters) filter_idx.emplace_back(table.column(name), value);

  std::vector<std::pair<double, double>> points;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const bool keep = std::all_of(filter_idx.begin(), filter_idx.end(),
                                  [&](const auto& f) { return row[f.first] == f.second; });
    if (!keep) continue;
    points.emplace_back(detail::parse_double_field(row[xi], r + 1),
                        detail::parse_double_field(row[yi], r + 1));
  }
  std::sort(points.begin(), points.end());
  Series s;
  for (const auto& [x, y] : points) {
    s.xs.push_back(x);
    s.ys.push_back(y);
  }
  return s;
}

inline std::vector<CostSample> samples_from_table(const CsvTable& table) {
  const auto alg = table.column("algorithm");
  const auto dist = table.column("distribution");
  const auto n = table.column("n");
  const auto trial = table.column("trial");
  const auto seed = table.column("seed");
  const auto elapsed = table.column("elapsed_s");
  const auto cmp = table.column("comparisons");
  const auto asg = table.column("assignments");
  const auto bal = table.column("balance_activations");
  const auto rex = table.column("root_exchanges");
  const auto depth = table.column("max_depth");
  std::vector<CostSample> samples;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    using detail::parse_u64_field;
    CostSample s;
    s.algorithm = parse_algorithm(row[alg]);
    s.distribution = row[dist];
    s.n = parse_u64_field(row[n], r + 1);
    s.trial = parse_u64_field(row[trial], r + 1);
    s.seed = Seed{parse_u64_field(row[seed], r + 1)};
    s.elapsed = detail::parse_double_field(row[elapsed], r + 1);
    s.counters.comparisons = parse_u64_field(row[cmp], r + 1);
    s.counters.assignments = parse_u64_field(row[asg], r + 1);
    s.counters.balance_activations = parse_u64_field(row[bal], r + 1);
    s.counters.root_exchanges = parse_u64_field(row[rex], r + 1);
    s.counters.max_recursion_depth = parse_u64_field(row[depth], r + 1);
    samples.push_back(std::move(s));
  }
  return samples;
}

// ---------------------------------------------------------------------------
// Report writers

inline constexpr std::string_view kCellCsvHeader =
    "algorithm,distribution,n,trials,mean_elapsed_s,sd_elapsed_s,mean_comparisons,"
    "mean_assignments,mean_balance_activations,mean_root_exchanges,mean_max_depth";

inline void write_cells_csv(std::ostream& out, const std::vector<CellResult>& cells) {
  using detail::format_number;
  out << kCellCsvHeader << '\n';
  for (const auto& c : cells) {
    out << algorithm_name(c.algorithm) << ',' << detail::csv_field(c.distribution) << ',' << c.n
        << ',' << c.trials << ',' << format_number(c.mean_elapsed) << ','
        << format_number(c.sd_elapsed) << ',' << format_number(c.mean.comparisons) << ','
        << format_number(c.mean.assignments) << ',' << format_number(c.mean.balance_activations)
        << ',' << format_number(c.mean.root_exchanges) << ',' << format_number(c.mean.max_depth)
        << '\n';
  }
}

inline void write_samples_csv(std::ostream& out, const std::vector<CostSample>& samples) {
  out << kSampleCsvHeader << '\n';
  for (const auto& s : samples) write_sample_row(out, s);
}

inline void write_fit_text(std::ostream& out, const SeriesFit& f) {
  using detail::format_number;
  out << "series: " << algorithm_name(f.algorithm) << " / " << f.distribution << " / "
      << response_name(f.response) << '\n';
  for (const auto& c : f.fit.candidates) {
    out << "  " << (c.model == f.fit.selected ? '*' : ' ') << ' ' << model_name(c.model)
        << "  a=" << format_number(c.a) << "  b=" << format_number(c.b)
        << "  se(b)=" << format_number(c.se_b) << "  rss=" << format_number(c.rss)
        << "  aicc=" << format_number(c.aicc) << "  r2=" << format_number(c.r_squared) << '\n';
  }
  const auto& best = f.fit.best();
  out << "  empirical O: O(" << model_name(f.fit.selected) << ")  b=" << format_number(best.b)
      << " +/- " << format_number(best.se_b) << '\n';
}

inline nlohmann::json fit_to_json(const SeriesFit& f) {
  nlohmann::json j;
  j["algorithm"] = algorithm_name(f.algorithm);
  j["distribution"] = f.distribution;
  j["response"] = response_name(f.response);
  j["selected"] = model_name(f.fit.selected);
  j["b"] = f.fit.best().b;
  j["se_b"] = f.fit.best().se_b;
  for (const auto& c : f.fit.candidates) {
    j["candidates"].push_back({{"model", model_name(c.model)},
                               {"a", c.a},
                               {"b", c.b},
                               {"se_b", c.se_b},
                               {"rss", c.rss},
                               {"aicc", c.aicc},
                               {"r_squared", c.r_squared}});
  }
  return j;
}

inline std::string file_safe(std::string_view text) {
  std::string out;
  for (const char c : text) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_';
    out += ok ? c : '_';
  }
  return out;
}

/// Two-column (n, value) blocks: observed means, a blank line, then the
/// selected model sampled at 50 evenly spaced sizes.
inline void write_figure_data(std::ostream& out, const Series& observed, const SeriesFit* fit) {
  using detail::format_number;
  out << "# n mean_elapsed_s\n";
  for (std::size_t i = 0; i < observed.xs.size(); ++i) {
    out << format_number(observed.xs[i]) << ' ' << format_number(observed.ys[i]) << '\n';
  }
  if (fit == nullptr || observed.xs.empty()) return;
  const auto& best = fit->fit.best();
  out << "\n\n# fitted " << model_name(best.model) << " (" << response_name(fit->response) << ")\n";
  const double lo = observed.xs.front();
  const double hi = observed.xs.back();
  constexpr int kSamples = 50;
  for (int i = 0; i < kSamples; ++i) {
    const double n = lo + (hi - lo) * i / (kSamples - 1);
    out << format_number(n) << ' ' << format_number(best.predict(n)) << '\n';
  }
}

struct ReportFiles {
  std::filesystem::path cells_csv;
  std::filesystem::path samples_csv;
  std::filesystem::path fits_txt;
  std::filesystem::path fits_json;
  std::vector<std::filesystem::path> figures;
};

/// Writes results.csv (one row per cell), samples.csv (one row per sort),
/// fits.txt / fits.json, and one figure_<algorithm>_<distribution>.dat per
/// series with its elapsed-time fit.
inline ReportFiles report(const ExperimentResult& result, const std::vector<SeriesFit>& fits,
                          const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw std::runtime_error("cannot create output directory " + out_dir.string());
  }
  auto open = [](const fs::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
  };

  ReportFiles files;
  files.cells_csv = out_dir / "results.csv";
  files.samples_csv = out_dir / "samples.csv";
  files.fits_txt = out_dir / "fits.txt";
  files.fits_json = out_dir / "fits.json";
  {
    auto f = open(files.cells_csv);
    write_cells_csv(f, result.cells);
  }
  {
    auto f = open(files.samples_csv);
    write_samples_csv(f, result.samples);
  }
  {
    auto txt = open(files.fits_txt);
    nlohmann::json all = nlohmann::json::array();
    for (const auto& fit : fits) {
      write_fit_text(txt, fit);
      all.push_back(fit_to_json(fit));
    }
    auto js = open(files.fits_json);
    js << all.dump(2) << '\n';
  }

  std::vector<std::pair<Algorithm, std::string>> seen;
  for (const auto& c : result.cells) {
    const std::pair key{c.algorithm, c.distribution};
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    const Series s = series_of(result, c.algorithm, c.distribution, Response::elapsed);
    const SeriesFit* fit = nullptr;
    for (const auto& f : fits) {
      if (f.algorithm == c.algorithm && f.distribution == c.distribution &&
          f.response == Response::elapsed) {
        fit = &f;
      }
    }
    const fs::path path = out_dir / ("figure_" + std::string(algorithm_name(c.algorithm)) + "_" +
                                     file_safe(c.distribution) + ".dat");
    auto f = open(path);
    write_figure_data(f, s, fit);
    files.figures.push_back(path);
  }
  return files;
}

}  // namespace smartsort
