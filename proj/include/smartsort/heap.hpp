#pragma once

#include <functional>
#include <optional>
#include <span>

#include "smartsort/counters.hpp"

namespace smartsort {

enum class HeapOrder { max, min };

namespace detail {

// Children of absolute index i inside seg sit at low + 2(i - low) + 1 and + 2,
// so heaps can live on any sub-range of the buffer.
inline std::ptrdiff_t first_child(Segment seg, std::ptrdiff_t i) noexcept {
  return seg.low + 2 * (i - seg.low) + 1;
}

// True when a must sit strictly above b in a heap of the given order.
template <HeapOrder Order, typename T, typename Compare>
inline bool outranks(const T& a, const T& b, Compare& cmp, Counters& counters) {
  if constexpr (Order == HeapOrder::max) {
    return less(b, a, cmp, counters);
  } else {
    return less(a, b, cmp, counters);
  }
}

template <HeapOrder Order, typename T, typename Compare>
void sift_down(std::span<T> buffer, Segment seg, std::ptrdiff_t i, Compare& cmp,
               Counters& counters) {
  for (;;) {
    std::ptrdiff_t child = first_child(seg, i);
    if (child > seg.high) return;
    if (child + 1 <= seg.high && outranks<Order>(buffer[child + 1], buffer[child], cmp, counters)) {
      ++child;
    }
    if (!outranks<Order>(buffer[child], buffer[i], cmp, counters)) return;
    exchange(buffer, i, child, counters);
    i = child;
  }
}

// Floyd's bottom-up construction: sift down every internal node, last first.
template <HeapOrder Order, typename T, typename Compare>
void make_heap(std::span<T> buffer, Segment seg, Compare& cmp, Counters& counters) {
  if (seg.range() < 2) return;
  const std::ptrdiff_t last_parent = seg.low + (seg.range() - 2) / 2;
  for (std::ptrdiff_t i = last_parent; i >= seg.low; --i) {
    sift_down<Order>(buffer, seg, i, cmp, counters);
  }
}

template <typename T>
std::optional<T> root_of(std::span<T> buffer, Segment seg) {
  if (seg.empty()) return std::nullopt;
  return buffer[seg.low];
}

}  // namespace detail

/// Rearranges buffer[seg] into a max-heap and returns its root (the segment
/// maximum), or nullopt for an empty segment.
template <typename T, typename Compare = std::less<>>
std::optional<T> build_max_heap(std::span<T> buffer, Segment seg, Counters& counters,
                                Compare cmp = {}) {
  detail::check_segment(buffer, seg, "build_max_heap");
  detail::make_heap<HeapOrder::max>(buffer, seg, cmp, counters);
  return detail::root_of(buffer, seg);
}

/// Min-heap counterpart of build_max_heap.
template <typename T, typename Compare = std::less<>>
std::optional<T> build_min_heap(std::span<T> buffer, Segment seg, Counters& counters,
                                Compare cmp = {}) {
  detail::check_segment(buffer, seg, "build_min_heap");
  detail::make_heap<HeapOrder::min>(buffer, seg, cmp, counters);
  return detail::root_of(buffer, seg);
}

/// Restores the max-heap property after the root of a valid heap was
/// replaced, using one sift-down from the root.
template <typename T, typename Compare = std::less<>>
std::optional<T> adjust_max_heap(std::span<T> buffer, Segment seg, Counters& counters,
                                 Compare cmp = {}) {
  detail::check_segment(buffer, seg, "adjust_max_heap");
  if (!seg.empty()) detail::sift_down<HeapOrder::max>(buffer, seg, seg.low, cmp, counters);
  return detail::root_of(buffer, seg);
}

template <typename T, typename Compare = std::less<>>
std::optional<T> adjust_min_heap(std::span<T> buffer, Segment seg, Counters& counters,
                                 Compare cmp = {}) {
  detail::check_segment(buffer, seg, "adjust_min_heap");
  if (!seg.empty()) detail::sift_down<HeapOrder::min>(buffer, seg, seg.low, cmp, counters);
  return detail::root_of(buffer, seg);
}

/// Number of parent/child pairs in buffer[seg] that break the heap order.
/// Uncounted; meant for tests and assertions.
template <HeapOrder Order, typename T, typename Compare = std::less<>>
std::size_t heap_violations(std::span<const T> buffer, Segment seg, Compare cmp = {}) {
  std::size_t violations = 0;
  for (std::ptrdiff_t i = seg.low; i <= seg.high; ++i) {
    const std::ptrdiff_t child = detail::first_child(seg, i);
    for (std::ptrdiff_t c = child; c <= child + 1 && c <= seg.high; ++c) {
      const bool bad = Order == HeapOrder::max ? cmp(buffer[i], buffer[c]) : cmp(buffer[c], buffer[i]);
      if (bad) ++violations;
    }
  }
  return violations;
}

}  // namespace smartsort
