#pragma once

#include <cstdint>
#include <functional>
#include <iterator>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>

#include "smartsort/counters.hpp"
#include "smartsort/heap.hpp"
#include "smartsort/partition.hpp"

namespace smartsort {

/// Skew thresholds. A partition whose pivot lands within t1 * range of the
/// left end (or t2 * range of the right end) is rebalanced with heaps.
class SortConfig {
 public:
  static constexpr double kDefaultThreshold = 0.01;

  SortConfig() = default;
  SortConfig(double t1, double t2) : t1_(t1), t2_(t2) {
    check(t1, "t1");
    check(t2, "t2");
  }

  double t1() const noexcept { return t1_; }
  double t2() const noexcept { return t2_; }

  friend bool operator==(const SortConfig&, const SortConfig&) = default;

 private:
  static void check(double t, const char* name) {
    // Written so that NaN fails too.
    if (!(t >= 0.0 && t <= 0.5)) {
      throw std::invalid_argument(std::string("SortConfig: ") + name + " must lie in [0, 0.5], got " +
                                  std::to_string(t));
    }
  }

  double t1_ = kDefaultThreshold;
  double t2_ = kDefaultThreshold;
};

enum class SkewSide { none, left, right };

struct PartitionOutcome {
  std::ptrdiff_t pivot_index = 0;
  bool balanced_by_heaps = false;
  SkewSide skew_side = SkewSide::none;

  friend bool operator==(const PartitionOutcome&, const PartitionOutcome&) = default;
};

// Instrumentation hooks. before_exchange fires immediately before every root
// exchange of the balancing loop and settled once that loop stops (before the
// left root moves to mid); both receive the two heap segments. partitioned
// fires after each smart_partition call made by smart_sort.
struct NullObserver {
  template <typename T>
  void before_exchange(std::span<const T>, Segment, Segment) const noexcept {}
  template <typename T>
  void settled(std::span<const T>, Segment, Segment) const noexcept {}
  template <typename T, typename Outcome>
  void partitioned(std::span<const T>, Segment, const Outcome&) const noexcept {}
};

namespace detail {

// Max-heap over `left`, min-heap over `right`; swap roots until the left
// maximum no longer exceeds the right minimum, then park the left maximum
// at `mid`. Afterwards MAX(left) <= MIN(right).
template <typename T, typename Compare, typename Observer>
void balance_blocks(std::span<T> buffer, Segment left, Segment right, std::ptrdiff_t mid,
                    Compare& cmp, Counters& counters, Observer& observer) {
  make_heap<HeapOrder::max>(buffer, left, cmp, counters);
  make_heap<HeapOrder::min>(buffer, right, cmp, counters);
  const std::span<const T> view = buffer;
  while (less(buffer[right.low], buffer[left.low], cmp, counters)) {
    observer.before_exchange(view, left, right);
    exchange(buffer, left.low, right.low, counters);
    ++counters.root_exchanges;
    sift_down<HeapOrder::max>(buffer, left, left.low, cmp, counters);
    sift_down<HeapOrder::min>(buffer, right, right.low, cmp, counters);
  }
  observer.settled(view, left, right);
  if (left.low != mid) exchange(buffer, left.low, mid, counters);
  ++counters.balance_activations;
}

}  // namespace detail

/// Partitions buffer[seg] on its first element, then repairs a badly skewed
/// split with the heap balancing step.
///
/// With skew_side == none the ordinary partition predicate holds around
/// pivot_index. Otherwise MAX(buffer[low..mid]) <= MIN(buffer[mid+1..high]),
/// buffer[mid] is the left maximum and buffer[mid+1] the right minimum.
/// The left test runs first; at most one side is rebalanced. Segments shorter
/// than 4 and skews that would leave a heap empty stay unbalanced.
template <typename T, typename Compare, typename Observer>
PartitionOutcome smart_partition(std::span<T> buffer, Segment seg, const SortConfig& config,
                                 Counters& counters, Compare cmp, Observer& observer) {
  const std::ptrdiff_t j = partition_first_pivot(buffer, seg, counters, cmp);
  ++counters.partition_calls;

  PartitionOutcome outcome{j, false, SkewSide::none};
  const std::ptrdiff_t range = seg.range();
  if (range < 4) return outcome;
  const std::ptrdiff_t mid = seg.mid();
  const double span_len = static_cast<double>(range);

  if (static_cast<double>(j - seg.low) <= config.t1() * span_len) {
    const Segment left{j + 1, mid};
    if (!left.empty()) {
      detail::balance_blocks(buffer, left, Segment{mid + 1, seg.high}, mid, cmp, counters, observer);
      outcome.balanced_by_heaps = true;
      outcome.skew_side = SkewSide::left;
    }
    return outcome;
  }

  if (static_cast<double>(seg.high - j) <= config.t2() * span_len) {
    const Segment right{mid + 1, j - 1};
    if (!right.empty()) {
      detail::balance_blocks(buffer, Segment{seg.low, mid}, right, mid, cmp, counters, observer);
      outcome.balanced_by_heaps = true;
      outcome.skew_side = SkewSide::right;
    }
  }
  return outcome;
}

template <typename T, typename Compare = std::less<>>
PartitionOutcome smart_partition(std::span<T> buffer, Segment seg, const SortConfig& config,
                                 Counters& counters, Compare cmp = {}) {
  NullObserver observer;
  return smart_partition(buffer, seg, config, counters, cmp, observer);
}

namespace detail {

template <typename T, typename Compare, typename Observer>
void smart_sort_segment(std::span<T> buffer, Segment seg, const SortConfig& config,
                        Counters& counters, Compare& cmp, Observer& observer, std::uint64_t depth) {
  if (seg.low >= seg.high) return;
  counters.note_depth(depth);
  const PartitionOutcome outcome = smart_partition(buffer, seg, config, counters, cmp, observer);
  observer.partitioned(std::span<const T>(buffer), seg, outcome);
  if (outcome.balanced_by_heaps) {
    // buffer[mid] and buffer[mid+1] are already final.
    const std::ptrdiff_t mid = seg.mid();
    smart_sort_segment(buffer, Segment{seg.low, mid - 1}, config, counters, cmp, observer, depth + 1);
    smart_sort_segment(buffer, Segment{mid + 2, seg.high}, config, counters, cmp, observer, depth + 1);
  } else {
    smart_sort_segment(buffer, Segment{seg.low, outcome.pivot_index - 1}, config, counters, cmp,
                       observer, depth + 1);
    smart_sort_segment(buffer, Segment{outcome.pivot_index + 1, seg.high}, config, counters, cmp,
                       observer, depth + 1);
  }
}

}  // namespace detail

/// Sorts a contiguous range ascending under cmp with Smart Sort.
template <std::ranges::contiguous_range R, typename Compare, typename Observer>
void smart_sort(R&& range, const SortConfig& config, Counters& counters, Compare cmp,
                Observer& observer) {
  std::span buffer{std::ranges::data(range), std::ranges::size(range)};
  if (buffer.empty()) return;
  detail::smart_sort_segment(buffer, Segment{0, static_cast<std::ptrdiff_t>(buffer.size()) - 1},
                             config, counters, cmp, observer, 1);
}

template <std::ranges::contiguous_range R, typename Compare = std::less<>>
void smart_sort(R&& range, const SortConfig& config, Counters& counters, Compare cmp = {}) {
  NullObserver observer;
  smart_sort(std::forward<R>(range), config, counters, cmp, observer);
}

template <std::ranges::contiguous_range R>
Counters smart_sort(R&& range, const SortConfig& config = {}) {
  Counters counters;
  smart_sort(std::forward<R>(range), config, counters);
  return counters;
}

}  // namespace smartsort
