// Copyright 2026 The wirelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Brute-force and dynamic-programming subset-sum references. Nothing in here
// looks at wire networks; the measurement code is checked against it.

#include <bit>
#include <cstdint>
#include <vector>

#include "wirelab/core.hpp"

namespace wirelab::oracle {

inline constexpr std::size_t max_enumeration_size = 24;
// Largest total the pseudo-polynomial DP will allocate a table for.
inline constexpr Row max_dp_total = Row{1} << 30;

struct SubsetWitness {
  std::vector<ElementIndex> indexes;  // ascending
  Row sum = 0;

  bool operator==(const SubsetWitness&) const = default;
};

namespace detail {

inline void require_enumerable(const InputMultiset& input) {
  if (input.size() > max_enumeration_size) {
    throw Error(ErrorCode::too_large_for_enumeration,
                "too large for enumeration: n = " + std::to_string(input.size()) + " > " +
                    std::to_string(max_enumeration_size));
  }
}

// sums[mask] for every mask, built from the lowest set bit.
inline std::vector<Row> all_subset_sums(const InputMultiset& input) {
  const std::size_t n = input.size();
  std::vector<Row> sums(std::size_t{1} << n, 0);
  for (std::size_t mask = 1; mask < sums.size(); ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    sums[mask] = sums[mask & (mask - 1)] + input[low];
  }
  return sums;
}

inline std::vector<char> reachable_table(const InputMultiset& input) {
  const Row total = input.total();
  if (total > max_dp_total) {
    throw Error(ErrorCode::too_large_for_enumeration, "element total too large for the DP table");
  }
  std::vector<char> reach(total + 1, 0);
  reach[0] = 1;
  Row hi = 0;
  for (Value v : input.values()) {
    for (Row s = hi + 1; s-- > 0;) {
      if (reach[s]) reach[s + v] = 1;
    }
    hi += v;
  }
  return reach;
}

}  // namespace detail

/// All nonempty index subsets whose values sum to `target`, ordered by
/// ascending bitmask.
inline std::vector<SubsetWitness> subsets_summing_to(const InputMultiset& input, Row target) {
  detail::require_enumerable(input);
  const auto sums = detail::all_subset_sums(input);
  std::vector<SubsetWitness> out;
  for (std::size_t mask = 1; mask < sums.size(); ++mask) {
    if (sums[mask] != target) continue;
    SubsetWitness w;
    w.sum = target;
    for (std::size_t i = 0; i < input.size(); ++i) {
      if (mask >> i & 1U) w.indexes.push_back(static_cast<ElementIndex>(i));
    }
    out.push_back(std::move(w));
  }
  return out;
}

inline std::uint64_t count_subsets(const InputMultiset& input, Row target) {
  detail::require_enumerable(input);
  const auto sums = detail::all_subset_sums(input);
  std::uint64_t count = 0;
  for (std::size_t mask = 1; mask < sums.size(); ++mask) count += sums[mask] == target;
  return count;
}

/// counts[s] = number of nonempty subsets summing to s, for s in [0, total].
/// One enumeration instead of one per target; used by the sweeps.
inline std::vector<std::uint64_t> subset_count_histogram(const InputMultiset& input) {
  detail::require_enumerable(input);
  const auto sums = detail::all_subset_sums(input);
  std::vector<std::uint64_t> counts(input.total() + 1, 0);
  for (std::size_t mask = 1; mask < sums.size(); ++mask) ++counts[sums[mask]];
  return counts;
}

inline bool decide_subset_sum(const InputMultiset& input, Row target) {
  if (target == 0 || target > input.total()) return false;
  return detail::reachable_table(input)[target] != 0;
}

/// Every sum reachable by a nonempty subset, ascending.
inline std::vector<Row> distinct_sums(const InputMultiset& input) {
  const auto reach = detail::reachable_table(input);
  std::vector<Row> out;
  for (Row s = 1; s < reach.size(); ++s) {
    if (reach[s]) out.push_back(s);
  }
  return out;
}

}  // namespace wirelab::oracle
