#pragma once

#include <functional>
#include <ranges>
#include <span>

#include "smartsort/counters.hpp"
#include "smartsort/heap.hpp"
#include "smartsort/partition.hpp"

namespace smartsort {

/// Textbook quicksort on partition_first_pivot. Recurses into the smaller
/// side and loops on the larger so stack depth stays logarithmic even when
/// comparisons go quadratic on sorted input. max_recursion_depth reports
/// the logical partition-tree depth.
template <std::ranges::contiguous_range R, typename Compare = std::less<>>
void quicksort_classic(R&& range, Counters& counters, Compare cmp = {}) {
  std::span buffer{std::ranges::data(range), std::ranges::size(range)};
  struct Walker {
    decltype(buffer) buf;
    Counters& counters;
    Compare& cmp;

    void operator()(Segment seg, std::uint64_t depth) {
      while (seg.low < seg.high) {
        counters.note_depth(depth);
        const std::ptrdiff_t j = partition_first_pivot(buf, seg, counters, cmp);
        ++counters.partition_calls;
        const Segment lower{seg.low, j - 1};
        const Segment upper{j + 1, seg.high};
        if (lower.range() < upper.range()) {
          (*this)(lower, depth + 1);
          seg = upper;
        } else {
          (*this)(upper, depth + 1);
          seg = lower;
        }
        ++depth;
      }
    }
  };
  if (buffer.empty()) return;
  Walker{buffer, counters, cmp}(Segment{0, static_cast<std::ptrdiff_t>(buffer.size()) - 1}, 1);
}

/// Heapsort: Floyd construction over the whole range, then repeated
/// root extraction with a sift-down.
template <std::ranges::contiguous_range R, typename Compare = std::less<>>
void heapsort_floyd(R&& range, Counters& counters, Compare cmp = {}) {
  std::span buffer{std::ranges::data(range), std::ranges::size(range)};
  const auto n = static_cast<std::ptrdiff_t>(buffer.size());
  if (n < 2) return;
  detail::make_heap<HeapOrder::max>(buffer, Segment{0, n - 1}, cmp, counters);
  for (std::ptrdiff_t end = n - 1; end > 0; --end) {
    detail::exchange(buffer, 0, end, counters);
    detail::sift_down<HeapOrder::max>(buffer, Segment{0, end - 1}, 0, cmp, counters);
  }
}

// Straight insertion sort, uninstrumented. Only for checking other sorts;
// quadratic, so keep inputs to a few thousand keys.
template <std::ranges::contiguous_range R, typename Compare = std::less<>>
void oracle_sort(R&& range, Compare cmp = {}) {
  std::span buffer{std::ranges::data(range), std::ranges::size(range)};
  for (std::size_t i = 1; i < buffer.size(); ++i) {
    auto key = std::move(buffer[i]);
    std::size_t j = i;
    for (; j > 0 && cmp(key, buffer[j - 1]); --j) buffer[j] = std::move(buffer[j - 1]);
    buffer[j] = std::move(key);
  }
}

}  // namespace smartsort
