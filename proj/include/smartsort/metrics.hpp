#pragma once

#include <chrono>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "smartsort/baselines.hpp"
#include "smartsort/counters.hpp"
#include "smartsort/input_gen.hpp"
#include "smartsort/smart_sort.hpp"

namespace smartsort {

enum class Algorithm { smart_sort, quicksort_classic, heapsort_floyd, oracle_sort };

inline std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::smart_sort: return "smart_sort";
    case Algorithm::quicksort_classic: return "quicksort_classic";
    case Algorithm::heapsort_floyd: return "heapsort_floyd";
    case Algorithm::oracle_sort: return "oracle_sort";
  }
  return "unknown";
}

inline Algorithm parse_algorithm(std::string_view name) {
  for (const auto a : {Algorithm::smart_sort, Algorithm::quicksort_classic,
                       Algorithm::heapsort_floyd, Algorithm::oracle_sort}) {
    if (algorithm_name(a) == name) return a;
  }
  throw ParameterError("unknown algorithm: " + std::string(name));
}

/// One timed, counted sort of one input.
struct CostSample {
  Algorithm algorithm = Algorithm::smart_sort;
  std::string distribution;  // describe() of the input's DistributionSpec
  std::size_t n = 0;
  std::size_t trial = 0;
  Seed seed;
  double elapsed = 0.0;  // seconds
  Counters counters;
};

/// Dispatches to the named algorithm. oracle_sort is uninstrumented and
/// leaves counters untouched.
template <typename T>
void run_algorithm(Algorithm algorithm, std::span<T> buffer, const SortConfig& config,
                   Counters& counters) {
  switch (algorithm) {
    case Algorithm::smart_sort: smart_sort(buffer, config, counters); return;
    case Algorithm::quicksort_classic: quicksort_classic(buffer, counters); return;
    case Algorithm::heapsort_floyd: heapsort_floyd(buffer, counters); return;
    case Algorithm::oracle_sort: oracle_sort(buffer); return;
  }
}

/// Sorts buffer in place and reports wall time of the sort call alone,
/// measured on the monotonic clock, plus the final counters.
template <typename T>
CostSample measure(Algorithm algorithm, std::span<T> buffer, const SortConfig& config = {}) {
  CostSample sample;
  sample.algorithm = algorithm;
  sample.n = buffer.size();
  Counters counters;
  const auto start = std::chrono::steady_clock::now();
  run_algorithm(algorithm, buffer, config, counters);
  const auto stop = std::chrono::steady_clock::now();
  sample.elapsed = std::chrono::duration<double>(stop - start).count();
  sample.counters = counters;
  return sample;
}

inline CostSample measure(Algorithm algorithm, Keys& keys, const SortConfig& config = {}) {
  return std::visit(
      [&](auto& values) { return measure(algorithm, std::span(values), config); }, keys);
}

inline constexpr std::string_view kSampleCsvHeader =
    "algorithm,distribution,n,trial,seed,elapsed_s,comparisons,assignments,"
    "balance_activations,root_exchanges,max_depth";

namespace detail {

// Fields containing commas or quotes are quoted, RFC 4180 style.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

inline void write_sample_row(std::ostream& out, const CostSample& s) {
  out << algorithm_name(s.algorithm) << ',' << detail::csv_field(s.distribution) << ',' << s.n
      << ',' << s.trial << ',' << s.seed.value << ',' << detail::format_number(s.elapsed) << ','
      << s.counters.comparisons << ',' << s.counters.assignments << ','
      << s.counters.balance_activations << ',' << s.counters.root_exchanges << ','
      << s.counters.max_recursion_depth << '\n';
}

}  // namespace smartsort
