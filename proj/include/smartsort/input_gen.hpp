#pragma once

#include <bit>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

namespace smartsort {

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Distribution descriptions. Defaults are the parameters of the reference
// experiment.

namespace dist {

struct Binomial {
  std::int64_t m = 1000;
  double p = 0.5;
};
struct Poisson {
  double lambda = 1.0;
};
struct DiscreteUniform {
  std::int64_t k = 1000;
};
struct ContinuousUniform {
  double lo = 0.0;
  double hi = 1.0;
};
struct Exponential {
  double theta = 1.0;
};
struct StandardNormal {
  double mu = 0.0;
  double sigma = 1.0;
};
struct SortedAscending {};
struct SortedDescending {};
struct AllEqual {};

}  // namespace dist

using DistributionSpec =
    std::variant<dist::Binomial, dist::Poisson, dist::DiscreteUniform, dist::ContinuousUniform,
                 dist::Exponential, dist::StandardNormal, dist::SortedAscending,
                 dist::SortedDescending, dist::AllEqual>;

enum class PatternKind { sorted_ascending, sorted_descending, all_equal };

struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(const Seed&, const Seed&) = default;
};

// Integer keys for discrete distributions and patterns, doubles otherwise.
using Keys = std::variant<std::vector<std::int64_t>, std::vector<double>>;

inline std::size_t key_count(const Keys& keys) {
  return std::visit([](const auto& v) { return v.size(); }, keys);
}

/// Short name of the distribution family, e.g. "binomial".
inline std::string kind_name(const DistributionSpec& spec) {
  struct Namer {
    std::string operator()(const dist::Binomial&) const { return "binomial"; }
    std::string operator()(const dist::Poisson&) const { return "poisson"; }
    std::string operator()(const dist::DiscreteUniform&) const { return "discrete_uniform"; }
    std::string operator()(const dist::ContinuousUniform&) const { return "continuous_uniform"; }
    std::string operator()(const dist::Exponential&) const { return "exponential"; }
    std::string operator()(const dist::StandardNormal&) const { return "standard_normal"; }
    std::string operator()(const dist::SortedAscending&) const { return "sorted_ascending"; }
    std::string operator()(const dist::SortedDescending&) const { return "sorted_descending"; }
    std::string operator()(const dist::AllEqual&) const { return "all_equal"; }
  };
  return std::visit(Namer{}, spec);
}

inline bool is_discrete(const DistributionSpec& spec) {
  return !std::holds_alternative<dist::ContinuousUniform>(spec) &&
         !std::holds_alternative<dist::Exponential>(spec) &&
         !std::holds_alternative<dist::StandardNormal>(spec);
}

namespace detail {

template <typename... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <typename... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Canonical text form, "name" or "name:key=value,...". parse_distribution
/// accepts it back.
inline std::string describe(const DistributionSpec& spec) {
  using detail::format_number;
  struct Describer {
    std::string operator()(const dist::Binomial& d) const {
      return "binomial:m=" + std::to_string(d.m) + ",p=" + format_number(d.p);
    }
    std::string operator()(const dist::Poisson& d) const {
      return "poisson:lambda=" + format_number(d.lambda);
    }
    std::string operator()(const dist::DiscreteUniform& d) const {
      return "discrete_uniform:k=" + std::to_string(d.k);
    }
    std::string operator()(const dist::ContinuousUniform& d) const {
      return "continuous_uniform:lo=" + format_number(d.lo) + ",hi=" + format_number(d.hi);
    }
    std::string operator()(const dist::Exponential& d) const {
      return "exponential:theta=" + format_number(d.theta);
    }
    std::string operator()(const dist::StandardNormal& d) const {
      return "standard_normal:mu=" + format_number(d.mu) + ",sigma=" + format_number(d.sigma);
    }
    std::string operator()(const dist::SortedAscending&) const { return "sorted_ascending"; }
    std::string operator()(const dist::SortedDescending&) const { return "sorted_descending"; }
    std::string operator()(const dist::AllEqual&) const { return "all_equal"; }
  };
  return std::visit(Describer{}, spec);
}

/// Throws ParameterError when a parameter is outside its domain.
inline void validate(const DistributionSpec& spec) {
  auto fail = [&](const std::string& what) {
    throw ParameterError(kind_name(spec) + ": " + what);
  };
  std::visit(detail::overloaded{
                 [&](const dist::Binomial& d) {
                   if (d.m < 1) fail("m must be >= 1");
                   if (!(d.p >= 0.0 && d.p <= 1.0)) fail("p must lie in [0, 1]");
                 },
                 [&](const dist::Poisson& d) {
                   if (!(d.lambda > 0.0) || !std::isfinite(d.lambda)) fail("lambda must be > 0");
                   // Knuth's method underflows exp(-lambda) beyond this.
                   if (d.lambda > 700.0) fail("lambda above 700 is not supported");
                 },
                 [&](const dist::DiscreteUniform& d) {
                   if (d.k < 1) fail("k must be >= 1");
                 },
                 [&](const dist::ContinuousUniform& d) {
                   if (!(d.lo < d.hi) || !std::isfinite(d.lo) || !std::isfinite(d.hi)) {
                     fail("need finite lo < hi");
                   }
                 },
                 [&](const dist::Exponential& d) {
                   if (!(d.theta > 0.0) || !std::isfinite(d.theta)) fail("theta must be > 0");
                 },
                 [&](const dist::StandardNormal& d) {
                   if (!std::isfinite(d.mu)) fail("mu must be finite");
                   if (!(d.sigma > 0.0) || !std::isfinite(d.sigma)) fail("sigma must be > 0");
                 },
                 [](const auto&) {},
             },
             spec);
}

/// Parses "name" or "name:key=value,...". Aliases: uniform01 for
/// continuous_uniform, normal for standard_normal.
inline DistributionSpec parse_distribution(std::string_view text) {
  const auto colon = text.find(':');
  std::string name(text.substr(0, colon));
  std::map<std::string, std::string, std::less<>> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw ParameterError("distribution parameter without '=': " + std::string(item));
      }
      params.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  }
  auto take_double = [&](const char* key, double fallback) {
    const auto it = params.find(key);
    if (it == params.end()) return fallback;
    double v = 0;
    const auto& s = it->second;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw ParameterError("bad value for " + std::string(key) + ": " + s);
    }
    params.erase(it);
    return v;
  };
  auto take_int = [&](const char* key, std::int64_t fallback) {
    const auto it = params.find(key);
    if (it == params.end()) return fallback;
    std::int64_t v = 0;
    const auto& s = it->second;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw ParameterError("bad value for " + std::string(key) + ": " + s);
    }
    params.erase(it);
    return v;
  };

  DistributionSpec spec;
  if (name == "binomial") {
    dist::Binomial d;
    d.m = take_int("m", d.m);
    d.p = take_double("p", d.p);
    spec = d;
  } else if (name == "poisson") {
    spec = dist::Poisson{take_double("lambda", 1.0)};
  } else if (name == "discrete_uniform") {
    spec = dist::DiscreteUniform{take_int("k", 1000)};
  } else if (name == "continuous_uniform" || name == "uniform01") {
    dist::ContinuousUniform d;
    d.lo = take_double("lo", d.lo);
    d.hi = take_double("hi", d.hi);
    spec = d;
  } else if (name == "exponential") {
    spec = dist::Exponential{take_double("theta", 1.0)};
  } else if (name == "standard_normal" || name == "normal") {
    dist::StandardNormal d;
    d.mu = take_double("mu", d.mu);
    d.sigma = take_double("sigma", d.sigma);
    spec = d;
  } else if (name == "sorted_ascending") {
    spec = dist::SortedAscending{};
  } else if (name == "sorted_descending") {
    spec = dist::SortedDescending{};
  } else if (name == "all_equal") {
    spec = dist::AllEqual{};
  } else {
    throw ParameterError("unknown distribution: " + name);
  }
  if (!params.empty()) {
    throw ParameterError(name + ": unknown parameter '" + params.begin()->first + "'");
  }
  validate(spec);
  return spec;
}

/// The six random distributions of the reference experiment, with their
/// default parameters.
inline std::vector<DistributionSpec> reference_distributions() {
  return {dist::Binomial{},      dist::Poisson{},     dist::DiscreteUniform{},
          dist::ContinuousUniform{}, dist::Exponential{}, dist::StandardNormal{}};
}

/// All nine kinds: the six random ones plus the three deterministic patterns.
inline std::vector<DistributionSpec> all_distribution_kinds() {
  auto all = reference_distributions();
  all.emplace_back(dist::SortedAscending{});
  all.emplace_back(dist::SortedDescending{});
  all.emplace_back(dist::AllEqual{});
  return all;
}

// ---------------------------------------------------------------------------
// Seeds and random variates.

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view text) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Child seed for one stream, mixed from the parent and any number of
/// stream coordinates.
template <typename... Coords>
Seed derive_seed(Seed base, Coords... coords) noexcept {
  std::uint64_t h = splitmix64(base.value);
  ((h = splitmix64(h ^ static_cast<std::uint64_t>(coords))), ...);
  return Seed{h};
}

/// Seed of the input stream for one (distribution, size, trial) cell.
inline Seed trial_seed(Seed base, const DistributionSpec& spec, std::size_t n, std::size_t trial) {
  return derive_seed(base, fnv1a(describe(spec)), n, trial);
}

// mt19937_64 output is fixed by the C++ standard; the transforms below are
// spelled out instead of using <random> distributions, whose algorithms are
// left to the library vendor.
class VariateSource {
 public:
  explicit VariateSource(Seed seed) : engine_(seed.value) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::int64_t bernoulli_sum(std::int64_t trials, double p) {
    std::int64_t successes = 0;
    for (std::int64_t i = 0; i < trials; ++i) successes += uniform01() < p ? 1 : 0;
    return successes;
  }

  // Knuth: multiply uniforms until the product drops to exp(-lambda).
  std::int64_t poisson(double lambda) {
    const double limit = std::exp(-lambda);
    std::int64_t k = 0;
    double product = 1.0;
    do {
      ++k;
      product *= uniform01();
    } while (product > limit);
    return k - 1;
  }

  std::int64_t discrete_uniform(std::int64_t k) {
    const auto v = static_cast<std::int64_t>(uniform01() * static_cast<double>(k));
    return 1 + std::min(v, k - 1);
  }

  double exponential(double theta) {
    // 1 - u lies in (0, 1], so the log is finite.
    return -theta * std::log(1.0 - uniform01());
  }

  // Marsaglia's polar method; the second variate of each pair is cached.
  double normal(double mu, double sigma) {
    if (spare_) {
      const double z = *spare_;
      spare_.reset();
      return mu + sigma * z;
    }
    double u = 0, v = 0, s = 0;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    return mu + sigma * u * factor;
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// The deterministic patterns: 1..n, n..1, or n copies of 1.
inline std::vector<std::int64_t> pattern(PatternKind kind, std::size_t n) {
  std::vector<std::int64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (kind) {
      case PatternKind::sorted_ascending: out[i] = static_cast<std::int64_t>(i + 1); break;
      case PatternKind::sorted_descending: out[i] = static_cast<std::int64_t>(n - i); break;
      case PatternKind::all_equal: out[i] = 1; break;
    }
  }
  return out;
}

/// n keys drawn from spec. A pure function of (spec, n, seed).
inline Keys generate(const DistributionSpec& spec, std::size_t n, Seed seed) {
  validate(spec);
  VariateSource src(seed);
  auto fill_int = [&](auto draw) {
    std::vector<std::int64_t> out(n);
    for (auto& v : out) v = draw();
    return Keys{std::move(out)};
  };
  auto fill_real = [&](auto draw) {
    std::vector<double> out(n);
    for (auto& v : out) v = draw();
    return Keys{std::move(out)};
  };
  return std::visit(
      detail::overloaded{
          [&](const dist::Binomial& d) { return fill_int([&] { return src.bernoulli_sum(d.m, d.p); }); },
          [&](const dist::Poisson& d) { return fill_int([&] { return src.poisson(d.lambda); }); },
          [&](const dist::DiscreteUniform& d) {
            return fill_int([&] { return src.discrete_uniform(d.k); });
          },
          [&](const dist::ContinuousUniform& d) {
            return fill_real([&] { return d.lo + (d.hi - d.lo) * src.uniform01(); });
          },
          [&](const dist::Exponential& d) {
            return fill_real([&] { return src.exponential(d.theta); });
          },
          [&](const dist::StandardNormal& d) {
            return fill_real([&] { return src.normal(d.mu, d.sigma); });
          },
          [&](const dist::SortedAscending&) { return Keys{pattern(PatternKind::sorted_ascending, n)}; },
          [&](const dist::SortedDescending&) {
            return Keys{pattern(PatternKind::sorted_descending, n)};
          },
          [&](const dist::AllEqual&) { return Keys{pattern(PatternKind::all_equal, n)}; },
      },
      spec);
}

// ---------------------------------------------------------------------------
// Key file formats.
//
// Text: one key per line, integers in decimal, reals in shortest round-trip
// form.
//
// Binary, all fields little-endian:
//   offset 0   8 bytes  magic "SSKEYS01"
//   offset 8   u32      element type: 0 = int64, 1 = float64 (IEEE 754)
//   offset 12  u32      reserved, 0
//   offset 16  u64      element count
//   offset 24  count * 8 bytes of elements

inline constexpr char kBinaryMagic[8] = {'S', 'S', 'K', 'E', 'Y', 'S', '0', '1'};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void write_text(std::ostream& out, const Keys& keys) {
  std::visit(
      [&](const auto& values) {
        char buf[64];
        for (const auto v : values) {
          const auto res = std::to_chars(buf, buf + sizeof buf, v);
          out.write(buf, res.ptr - buf);
          out.put('\n');
        }
      },
      keys);
}

namespace detail {

inline void put_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(bytes, 8);
}

inline void put_u32(std::ostream& out, std::uint32_t v) {
  char bytes[4];
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(bytes, 4);
}

inline std::uint64_t get_le(const unsigned char* p, int width) {
  std::uint64_t v = 0;
  for (int i = width - 1; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace detail

inline void write_binary(std::ostream& out, const Keys& keys) {
  out.write(kBinaryMagic, sizeof kBinaryMagic);
  const bool real = std::holds_alternative<std::vector<double>>(keys);
  detail::put_u32(out, real ? 1 : 0);
  detail::put_u32(out, 0);
  detail::put_u64(out, key_count(keys));
  std::visit(
      [&](const auto& values) {
        for (const auto v : values) detail::put_u64(out, std::bit_cast<std::uint64_t>(v));
      },
      keys);
}

inline bool has_binary_magic(std::string_view bytes) {
  return bytes.size() >= sizeof kBinaryMagic &&
         std::memcmp(bytes.data(), kBinaryMagic, sizeof kBinaryMagic) == 0;
}

inline Keys read_binary(std::string_view bytes) {
  if (!has_binary_magic(bytes)) throw FormatError("binary keys: bad magic");
  if (bytes.size() < 24) throw FormatError("binary keys: truncated header");
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const auto type = detail::get_le(p + 8, 4);
  const auto count = detail::get_le(p + 16, 8);
  if (type > 1) throw FormatError("binary keys: unknown element type " + std::to_string(type));
  if ((bytes.size() - 24) / 8 < count || bytes.size() != 24 + count * 8) {
    throw FormatError("binary keys: expected " + std::to_string(count) + " elements");
  }
  auto decode = [&]<typename V>(std::vector<V> out) {
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = std::bit_cast<V>(detail::get_le(p + 24 + 8 * i, 8));
    }
    return Keys{std::move(out)};
  };
  if (type == 0) return decode(std::vector<std::int64_t>(count));
  return decode(std::vector<double>(count));
}

/// Parses one key per line; blank lines are skipped. Yields integer keys
/// when every line is an integer, reals otherwise. A line that is neither
/// raises FormatError naming its 1-based line number.
inline Keys read_text(std::istream& in) {
  std::vector<std::int64_t> ints;
  std::vector<double> reals;
  bool all_int = true;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = line;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) continue;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (*first == '+') ++first;
    double real = 0;
    const auto rr = std::from_chars(first, last, real);
    if (rr.ec != std::errc{} || rr.ptr != last || !std::isfinite(real)) {
      throw FormatError("line " + std::to_string(line_no) + ": not a finite number: '" +
                        std::string(s) + "'");
    }
    if (all_int) {
      std::int64_t integer = 0;
      const auto ir = std::from_chars(first, last, integer);
      if (ir.ec == std::errc{} && ir.ptr == last) {
        ints.push_back(integer);
      } else {
        all_int = false;
      }
    }
    reals.push_back(real);
  }
  if (all_int) return Keys{std::move(ints)};
  return Keys{std::move(reals)};
}

/// Reads either format, sniffing the binary magic.
inline Keys read_keys(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string bytes = std::move(buffer).str();
  if (has_binary_magic(bytes)) return read_binary(bytes);
  std::istringstream text(bytes);
  return read_text(text);
}

}  // namespace smartsort
