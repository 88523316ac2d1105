#pragma once

#include <functional>
#include <span>

#include "smartsort/counters.hpp"

namespace smartsort {

/// Partitions buffer[seg] around its first element.
///
/// Two indices scan inward from the ends, each stopping on keys equal to the
/// pivot so runs of duplicates split evenly. On return the pivot sits at the
/// returned index J, everything in [low, J-1] is <= pivot and everything in
/// [J+1, high] is >= pivot.
template <typename T, typename Compare = std::less<>>
std::ptrdiff_t partition_first_pivot(std::span<T> buffer, Segment seg, Counters& counters,
                                     Compare cmp = {}) {
  if (seg.empty()) throw ContractViolation("partition_first_pivot: empty segment");
  detail::check_segment(buffer, seg, "partition_first_pivot");

  const std::ptrdiff_t low = seg.low;
  std::ptrdiff_t i = low;
  std::ptrdiff_t j = seg.high + 1;
  for (;;) {
    while (++i <= seg.high && detail::less(buffer[i], buffer[low], cmp, counters)) {
    }
    // Stops at low at the latest: the pivot is never less than itself.
    while (detail::less(buffer[low], buffer[--j], cmp, counters)) {
    }
    if (i >= j) break;
    detail::exchange(buffer, i, j, counters);
  }
  if (j != low) detail::exchange(buffer, low, j, counters);
  return j;
}

}  // namespace smartsort
