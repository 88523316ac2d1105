#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

namespace smartsort {

// Raised when a caller breaks a precondition of a sorting primitive
// (empty partition segment, indices outside the buffer).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Inclusive index range [low, high] into a buffer, 0-based.
// Empty iff low > high. mid() and range() are always derived.
struct Segment {
  std::ptrdiff_t low = 0;
  std::ptrdiff_t high = -1;

  constexpr bool empty() const noexcept { return low > high; }
  constexpr std::ptrdiff_t range() const noexcept { return high - low + 1; }
  constexpr std::ptrdiff_t mid() const noexcept { return low + (high - low) / 2; }

  friend constexpr bool operator==(const Segment&, const Segment&) = default;
};

// Operation counts for one sort invocation.
//
// assignments counts element writes; an exchange is three writes.
// max_recursion_depth is the deepest nesting of calls that partitioned
// a segment; it combines with max() rather than addition.
struct Counters {
  std::uint64_t comparisons = 0;
  std::uint64_t assignments = 0;
  std::uint64_t partition_calls = 0;
  std::uint64_t balance_activations = 0;
  std::uint64_t root_exchanges = 0;
  std::uint64_t max_recursion_depth = 0;

  void note_depth(std::uint64_t depth) noexcept {
    max_recursion_depth = std::max(max_recursion_depth, depth);
  }

  Counters& operator+=(const Counters& other) noexcept {
    comparisons += other.comparisons;
    assignments += other.assignments;
    partition_calls += other.partition_calls;
    balance_activations += other.balance_activations;
    root_exchanges += other.root_exchanges;
    note_depth(other.max_recursion_depth);
    return *this;
  }

  friend Counters operator+(Counters lhs, const Counters& rhs) noexcept {
    lhs += rhs;
    return lhs;
  }

  friend bool operator==(const Counters&, const Counters&) = default;
};

namespace detail {

template <typename T>
void check_segment(std::span<T> buffer, Segment seg, const char* what) {
  if (seg.empty()) return;
  if (seg.low < 0 || seg.high >= static_cast<std::ptrdiff_t>(buffer.size())) {
    throw ContractViolation(std::string(what) + ": segment [" + std::to_string(seg.low) + ", " +
                            std::to_string(seg.high) + "] outside buffer of size " +
                            std::to_string(buffer.size()));
  }
}

template <typename T>
inline void exchange(std::span<T> buffer, std::ptrdiff_t i, std::ptrdiff_t j, Counters& counters) {
  using std::swap;
  swap(buffer[i], buffer[j]);
  counters.assignments += 3;
}

// Counted strict-weak-order test: cmp(a, b).
template <typename T, typename Compare>
inline bool less(const T& a, const T& b, Compare& cmp, Counters& counters) {
  ++counters.comparisons;
  return cmp(a, b);
}

}  // namespace detail
}  // namespace smartsort
