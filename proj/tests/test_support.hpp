#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "smartsort/smartsort.hpp"

namespace smartsort::testing {

// Every element of [low, j-1] <= buf[j] <= every element of [j+1, high].
template <typename T>
bool partition_predicate_holds(std::span<const T> buf, Segment seg, std::ptrdiff_t j) {
  if (j < seg.low || j > seg.high) return false;
  for (auto i = seg.low; i < j; ++i) {
    if (buf[j] < buf[i]) return false;
  }
  for (auto i = j + 1; i <= seg.high; ++i) {
    if (buf[i] < buf[j]) return false;
  }
  return true;
}

// MAX(buf[low..mid]) <= MIN(buf[mid+1..high]), with buf[mid] the left
// maximum and buf[mid+1] the right minimum.
template <typename T>
bool block_postcondition_holds(std::span<const T> buf, Segment seg) {
  const auto mid = seg.mid();
  const auto left_max = *std::max_element(buf.begin() + seg.low, buf.begin() + mid + 1);
  const auto right_min = *std::min_element(buf.begin() + mid + 1, buf.begin() + seg.high + 1);
  return !(right_min < left_max) && !(buf[mid] < left_max) && !(right_min < buf[mid + 1]);
}

// Pairs (x in left, y in right) with x > y.
template <typename T>
std::size_t cross_inversions(std::span<const T> buf, Segment left, Segment right) {
  std::size_t count = 0;
  for (auto i = left.low; i <= left.high; ++i) {
    for (auto j = right.low; j <= right.high; ++j) {
      if (buf[j] < buf[i]) ++count;
    }
  }
  return count;
}

template <typename T>
std::vector<T> sorted_copy(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline std::vector<int> iota_vector(int n, int first = 1) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), first);
  return v;
}

inline std::vector<int> random_ints(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> pick(lo, hi);
  std::vector<int> v(n);
  for (auto& x : v) x = pick(rng);
  return v;
}

// Checks every partition made during a sort and records failures.
struct PostconditionObserver {
  std::size_t balanced = 0;
  std::size_t plain = 0;
  std::size_t failures = 0;

  template <typename T>
  void before_exchange(std::span<const T>, Segment, Segment) {}
  template <typename T>
  void settled(std::span<const T>, Segment, Segment) {}
  template <typename T>
  void partitioned(std::span<const T> buf, Segment seg, const PartitionOutcome& outcome) {
    if (outcome.balanced_by_heaps) {
      ++balanced;
      if (!block_postcondition_holds(buf, seg)) ++failures;
    } else {
      ++plain;
      if (!partition_predicate_holds(buf, seg, outcome.pivot_index)) ++failures;
    }
  }
};

// Tracks the cross-boundary inversion count across a balancing loop.
struct InversionObserver {
  std::size_t loops = 0;
  std::size_t exchanges = 0;
  std::size_t violations = 0;  // exchanges that failed to decrease the count
  std::size_t exceeded_bound = 0;
  std::int64_t last = -1;
  std::size_t initial = 0;
  std::size_t in_loop = 0;

  template <typename T>
  void before_exchange(std::span<const T> buf, Segment left, Segment right) {
    const auto now = static_cast<std::int64_t>(cross_inversions(buf, left, right));
    if (last < 0) {
      initial = static_cast<std::size_t>(now);
    } else if (now >= last) {
      ++violations;
    }
    last = now;
    ++exchanges;
    ++in_loop;
  }
  template <typename T>
  void settled(std::span<const T> buf, Segment left, Segment right) {
    const auto now = static_cast<std::int64_t>(cross_inversions(buf, left, right));
    if (last >= 0 && now >= last) ++violations;
    if (now != 0) ++violations;
    if (last >= 0 && in_loop > initial) ++exceeded_bound;
    ++loops;
    last = -1;
    in_loop = 0;
  }
  template <typename T, typename O>
  void partitioned(std::span<const T>, Segment, const O&) {}
};

}  // namespace smartsort::testing
