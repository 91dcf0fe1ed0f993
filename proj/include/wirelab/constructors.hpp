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

// Constructor algorithms: each turns an input multiset into the wire network
// that answers subset-sum queries over it. Elements are removed in input
// order, so the same input always yields the same network, wire ids included.

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "wirelab/core.hpp"

namespace wirelab {

struct BuildOptions {
  /// Largest accepted input size; networks grow as 2^n.
  std::size_t max_elements = 24;
};

namespace detail {

inline void check_build_input(const InputMultiset& input, const BuildOptions& options) {
  if (input.empty()) throw Error(ErrorCode::empty_input, "empty input");
  if (input.size() > options.max_elements) {
    throw Error(ErrorCode::size_limit, "size limit: n = " + std::to_string(input.size()) +
                                           " exceeds " + std::to_string(options.max_elements));
  }
}

class WireSink {
 public:
  explicit WireSink(std::size_t reserve) { wires_.reserve(reserve); }

  std::size_t add(ElementIndex element, Value length, Row start, Attachment parent) {
    Wire w;
    w.id = WireId{wires_.size()};
    w.element_index = element;
    w.length = length;
    w.start_row = start;
    w.end_row = start + length;
    w.parent = parent;
    wires_.push_back(w);
    return wires_.size() - 1;
  }

  const Wire& operator[](std::size_t i) const { return wires_[i]; }
  std::size_t size() const noexcept { return wires_.size(); }
  std::vector<Wire> take() && { return std::move(wires_); }

 private:
  std::vector<Wire> wires_;
};

// The standard tree over elements [first, n), hung from `attach` at `base`.
// Step one places one wire per element; then each removed element x_f grows
// every wire that carries it by one wire per element still remaining.
inline void grow_standard_tree(WireSink& sink, const InputMultiset& input, ElementIndex first,
                               Row base, Attachment attach) {
  const auto n = static_cast<ElementIndex>(input.size());
  std::vector<std::vector<std::size_t>> carrying(n);
  for (ElementIndex e = first; e < n; ++e) {
    carrying[e].push_back(sink.add(e, input[e], base, attach));
  }
  for (ElementIndex removed = first; removed + 1 < n; ++removed) {
    for (std::size_t slot : carrying[removed]) {
      const Row end = sink[slot].end_row;
      const WireId parent = sink[slot].id;
      for (ElementIndex e = removed + 1; e < n; ++e) {
        carrying[e].push_back(sink.add(e, input[e], end, parent));
      }
    }
  }
}

}  // namespace detail

/// Closed-form wire count. For multiset-optimized networks the value is an
/// upper bound (the exact count depends on repeated values) and `is_bound` is set.
struct WireCountPrediction {
  std::uint64_t count = 0;
  bool is_bound = false;
};

inline WireCountPrediction expected_wire_count(BuilderKind kind, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::empty_input, "empty input");
  if (n > 63) throw Error(ErrorCode::size_limit, "size limit: wire count overflows 64 bits");
  switch (kind) {
    case BuilderKind::standard:
      return {(std::uint64_t{1} << n) - 1, false};
    case BuilderKind::reduced:
      return {std::uint64_t{1} << (n - 1), false};
    case BuilderKind::multiset_optimized:
      return {std::uint64_t{1} << (n - 1), true};
  }
  return {};
}

/// One measurement at row 0; every nonempty subset appears as exactly one chain.
inline WireNetwork build_standard(const InputMultiset& input, const BuildOptions& options = {}) {
  detail::check_build_input(input, options);
  detail::WireSink sink(expected_wire_count(BuilderKind::standard, input.size()).count);
  detail::grow_standard_tree(sink, input, 0, 0, RootAttach{0});
  return make_network(input, BuilderKind::standard, std::move(sink).take());
}

/// Two measurements (rows 0 and v_f). Keeps only the half of the standard tree
/// that hangs below the first element's wire; the other half is answered by
/// measuring from row v_f.
inline WireNetwork build_reduced(const InputMultiset& input, const BuildOptions& options = {}) {
  detail::check_build_input(input, options);
  detail::WireSink sink(expected_wire_count(BuilderKind::reduced, input.size()).count);
  const std::size_t first = sink.add(0, input[0], 0, RootAttach{0});
  detail::grow_standard_tree(sink, input, 1, sink[first].end_row, sink[first].id);
  return make_network(input, BuilderKind::reduced, std::move(sink).take());
}

/// Decision-only network for multisets with repeated values. Wires are matched
/// by value rather than element identity, and a wire never receives two
/// children of the same length.
inline WireNetwork build_multiset_optimized(const InputMultiset& input,
                                            const BuildOptions& options = {}) {
  detail::check_build_input(input, options);
  const auto n = static_cast<ElementIndex>(input.size());

  // Distinct values among elements [from, n), each tagged with its first index.
  auto distinct_remaining = [&](ElementIndex from) {
    std::vector<std::pair<Value, ElementIndex>> out;
    std::set<Value> seen;
    for (ElementIndex e = from; e < n; ++e) {
      if (seen.insert(input[e]).second) out.emplace_back(input[e], e);
    }
    return out;
  };

  detail::WireSink sink(std::size_t{1} << std::min<std::size_t>(n - 1, 20));
  std::vector<std::set<Value>> child_lengths;
  auto attach_children = [&](std::size_t parent_slot, ElementIndex from) {
    const Row end = sink[parent_slot].end_row;
    const WireId parent = sink[parent_slot].id;
    for (auto [value, element] : distinct_remaining(from)) {
      if (!child_lengths[parent_slot].insert(value).second) continue;
      sink.add(element, value, end, parent);
      child_lengths.emplace_back();
    }
  };

  sink.add(0, input[0], 0, RootAttach{0});
  child_lengths.emplace_back();
  attach_children(0, 1);

  for (ElementIndex removed = 1; removed + 1 < n; ++removed) {
    const Value value = input[removed];
    const std::size_t existing = sink.size();
    for (std::size_t slot = 0; slot < existing; ++slot) {
      if (sink[slot].length == value) attach_children(slot, removed + 1);
    }
  }
  return make_network(input, BuilderKind::multiset_optimized, std::move(sink).take());
}

inline WireNetwork build(BuilderKind kind, const InputMultiset& input,
                         const BuildOptions& options = {}) {
  switch (kind) {
    case BuilderKind::standard:
      return build_standard(input, options);
    case BuilderKind::reduced:
      return build_reduced(input, options);
    case BuilderKind::multiset_optimized:
      return build_multiset_optimized(input, options);
  }
  throw Error(ErrorCode::internal, "unknown builder kind");
}

/// Extends a standard or reduced network with a new last element without
/// rebuilding it. Each wire carrying the current last element gains a copy of
/// the new value at its start row (sibling) and at its end row (child).
inline WireNetwork grow(const WireNetwork& net, Value new_value) {
  if (net.kind == BuilderKind::multiset_optimized) {
    throw Error(ErrorCode::growth_unsupported, "growth unsupported for decision-only networks");
  }
  if (new_value == 0) throw Error(ErrorCode::invalid_value, "new element must be positive");
  if (net.input.empty()) throw Error(ErrorCode::empty_input, "empty input");

  InputMultiset input = net.input.with_appended(new_value);
  const auto last = static_cast<ElementIndex>(net.input.size() - 1);
  const auto added = static_cast<ElementIndex>(net.input.size());

  std::vector<Wire> wires = net.wires;
  std::uint64_t next_id = 0;
  for (const Wire& w : wires) next_id = std::max(next_id, to_underlying(w.id) + 1);

  auto append = [&](Row start, Attachment parent) {
    Wire w;
    w.id = WireId{next_id++};
    w.element_index = added;
    w.length = new_value;
    w.start_row = start;
    w.end_row = start + new_value;
    w.parent = parent;
    wires.push_back(w);
  };

  for (const Wire& w : net.wires) {
    if (w.element_index != last) continue;
    // In a reduced network the root wire is the split element; its sibling
    // subsets are covered by the second measurement, not by wires.
    const bool skip_sibling = net.kind == BuilderKind::reduced && is_root(w.parent);
    if (!skip_sibling) append(w.start_row, w.parent);
    append(w.end_row, w.id);
  }
  return make_network(std::move(input), net.kind, std::move(wires));
}

}  // namespace wirelab
