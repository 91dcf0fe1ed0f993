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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

namespace wirelab {

/// Position of a board row, in unit lengths from row 0.
using Row = std::uint64_t;
/// Integer value encoded by a wire; also its length in unit lengths.
using Value = std::uint32_t;
/// Position of an element inside an InputMultiset. Duplicated values are
/// distinct elements because they have distinct indexes.
using ElementIndex = std::uint32_t;

enum class WireId : std::uint64_t {};

constexpr std::uint64_t to_underlying(WireId id) noexcept {
  return static_cast<std::uint64_t>(id);
}

enum class ErrorCode {
  empty_input,
  size_limit,
  invalid_query,
  invalid_value,
  counting_unsupported,
  growth_unsupported,
  undefined_attachment,
  duplicate_id,
  bad_length,
  header_mismatch,
  validation,
  parse,
  schema_version,
  too_large_for_enumeration,
  usage,
  internal,
};

/// Every failure raised by the library. The code lets front ends tell usage
/// problems apart from domain errors without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Ordered list of positive integers. The order is the element-removal order
/// used by every constructor algorithm.
class InputMultiset {
 public:
  InputMultiset() = default;

  explicit InputMultiset(std::vector<Value> elements) : elements_(std::move(elements)) {
    for (Value v : elements_) {
      if (v == 0) {
        throw Error(ErrorCode::invalid_value, "input elements must be positive integers");
      }
    }
  }

  InputMultiset(std::initializer_list<Value> elements)
      : InputMultiset(std::vector<Value>(elements)) {}

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  Value operator[](std::size_t i) const { return elements_[i]; }
  Value at(std::size_t i) const { return elements_.at(i); }
  std::span<const Value> values() const noexcept { return elements_; }

  Row total() const noexcept {
    Row sum = 0;
    for (Value v : elements_) sum += v;
    return sum;
  }

  /// Copy with `value` appended as the new last element.
  InputMultiset with_appended(Value value) const {
    std::vector<Value> next = elements_;
    next.push_back(value);
    return InputMultiset(std::move(next));
  }

  bool operator==(const InputMultiset&) const = default;

 private:
  std::vector<Value> elements_;
};

/// Attachment of a wire directly to a board row (a measurement base).
struct RootAttach {
  Row row = 0;
  bool operator==(const RootAttach&) const = default;
};

/// A wire hangs either from a base row or from the end row of another wire.
using Attachment = std::variant<RootAttach, WireId>;

inline bool is_root(const Attachment& a) noexcept {
  return std::holds_alternative<RootAttach>(a);
}

struct Wire {
  WireId id{};
  ElementIndex element_index = 0;
  Value length = 0;
  Row start_row = 0;
  Row end_row = 0;
  Attachment parent = RootAttach{0};

  bool operator==(const Wire&) const = default;
};

enum class BuilderKind { standard, reduced, multiset_optimized };

inline std::string_view to_string(BuilderKind kind) noexcept {
  switch (kind) {
    case BuilderKind::standard:
      return "standard";
    case BuilderKind::reduced:
      return "reduced";
    case BuilderKind::multiset_optimized:
      return "multiset-opt";
  }
  return "unknown";
}

inline std::optional<BuilderKind> parse_builder_kind(std::string_view text) noexcept {
  if (text == "standard") return BuilderKind::standard;
  if (text == "reduced") return BuilderKind::reduced;
  if (text == "multiset-opt" || text == "multiset_optimized" || text == "multiset-optimized") {
    return BuilderKind::multiset_optimized;
  }
  return std::nullopt;
}

/// Base rows at which the measurement device is attached. A query q measures
/// the row pair (b, b + q) for each base b.
struct MeasurementPlan {
  std::vector<Row> bases;
  bool operator==(const MeasurementPlan&) const = default;
};

/// Plan rule: one measurement at row 0 for standard networks, two at rows 0 and
/// the first element's value otherwise.
inline MeasurementPlan plan_for(BuilderKind kind, const InputMultiset& input) {
  if (kind == BuilderKind::standard || input.empty()) return MeasurementPlan{{0}};
  return MeasurementPlan{{0, input[0]}};
}

/// A built wire network. Values are immutable once returned by a builder;
/// every operation that changes a network produces a new one.
struct WireNetwork {
  InputMultiset input;
  BuilderKind kind = BuilderKind::standard;
  std::vector<Wire> wires;
  MeasurementPlan plan;
  Row max_row = 0;
  bool counting_supported = true;

  bool operator==(const WireNetwork&) const = default;
};

inline Row compute_max_row(std::span<const Wire> wires) noexcept {
  Row max_row = 0;
  for (const Wire& w : wires) max_row = std::max(max_row, w.end_row);
  return max_row;
}

/// Fills the derived fields (plan, max_row, counting_supported) from the rest.
inline WireNetwork make_network(InputMultiset input, BuilderKind kind, std::vector<Wire> wires) {
  WireNetwork net;
  net.plan = plan_for(kind, input);
  net.input = std::move(input);
  net.kind = kind;
  net.max_row = compute_max_row(wires);
  net.wires = std::move(wires);
  net.counting_supported = kind != BuilderKind::multiset_optimized;
  return net;
}

struct ElectricalConfig {
  double voltage = 1.0;          // volts
  double unit_resistance = 1.0;  // ohms per unit length
  double detection_threshold = 1e-9;  // amps

  void check() const {
    if (!(voltage > 0.0) || !(unit_resistance > 0.0) || !(detection_threshold > 0.0)) {
      throw Error(ErrorCode::usage, "electrical parameters must be strictly positive");
    }
  }
};

struct QueryResult {
  Row query = 0;
  bool decision = false;
  std::optional<std::uint64_t> exact_count;
  std::vector<double> currents;  // amps, one per measurement base
  std::optional<double> estimated_count;
  /// Monotone row paths summed over the plan; diagnostic only.
  std::uint64_t row_path_count = 0;
};

struct Violation {
  std::optional<WireId> wire;
  std::string message;
};

namespace detail {

inline std::string wire_label(WireId id) {
  return "wire " + std::to_string(to_underlying(id));
}

}  // namespace detail

/// Checks every structural invariant of a network. Returns one entry per
/// broken invariant; an empty list means the network is well formed.
inline std::vector<Violation> validate_network(const WireNetwork& net) {
  std::vector<Violation> out;
  auto report = [&](std::optional<WireId> id, std::string what) {
    std::string msg = id ? detail::wire_label(*id) + ": " + what : std::move(what);
    out.push_back({id, std::move(msg)});
  };

  if (net.input.empty()) report(std::nullopt, "input multiset is empty");
  for (std::size_t i = 0; i < net.input.size(); ++i) {
    if (net.input[i] == 0) report(std::nullopt, "input element " + std::to_string(i) + " is zero");
  }

  std::unordered_map<std::uint64_t, std::size_t> by_id;
  by_id.reserve(net.wires.size());
  for (std::size_t i = 0; i < net.wires.size(); ++i) {
    if (!by_id.emplace(to_underlying(net.wires[i].id), i).second) {
      report(net.wires[i].id, "duplicate wire id");
    }
  }

  for (const Wire& w : net.wires) {
    if (w.length == 0) report(w.id, "length must be positive");
    if (w.element_index >= net.input.size()) {
      report(w.id, "element_index " + std::to_string(w.element_index) + " out of range");
    } else if (net.input[w.element_index] != w.length) {
      report(w.id, "length " + std::to_string(w.length) + " differs from input element value " +
                       std::to_string(net.input[w.element_index]));
    }
    if (w.end_row != w.start_row + w.length) {
      report(w.id, "end_row " + std::to_string(w.end_row) + " != start_row + length (" +
                       std::to_string(w.start_row + w.length) + ")");
    }
    if (const auto* root = std::get_if<RootAttach>(&w.parent)) {
      if (root->row != w.start_row) {
        report(w.id, "start_row " + std::to_string(w.start_row) + " differs from root base row " +
                         std::to_string(root->row));
      }
    } else {
      WireId parent = std::get<WireId>(w.parent);
      auto it = by_id.find(to_underlying(parent));
      if (it == by_id.end()) {
        report(w.id, "parent " + detail::wire_label(parent) + " does not exist");
      } else if (net.wires[it->second].end_row != w.start_row) {
        report(w.id, "start_row " + std::to_string(w.start_row) + " differs from parent end_row " +
                         std::to_string(net.wires[it->second].end_row));
      }
    }
  }

  // Forest check: every chain of parents must reach a root within |wires| steps.
  std::vector<char> state(net.wires.size(), 0);  // 0 unknown, 1 in progress, 2 reaches root
  for (std::size_t start = 0; start < net.wires.size(); ++start) {
    std::vector<std::size_t> path;
    std::size_t cur = start;
    bool cycle = false;
    while (state[cur] == 0) {
      state[cur] = 1;
      path.push_back(cur);
      const Wire& w = net.wires[cur];
      if (is_root(w.parent)) break;
      auto it = by_id.find(to_underlying(std::get<WireId>(w.parent)));
      if (it == by_id.end()) break;  // already reported
      cur = it->second;
      if (state[cur] == 1) {
        cycle = true;
        break;
      }
    }
    if (cycle) report(net.wires[cur].id, "parent references form a cycle");
    for (std::size_t p : path) state[p] = 2;
  }

  if (net.max_row != compute_max_row(net.wires)) {
    report(std::nullopt, "max_row " + std::to_string(net.max_row) + " differs from largest end_row");
  }
  if (net.counting_supported != (net.kind != BuilderKind::multiset_optimized)) {
    report(std::nullopt, "counting_supported must be false exactly for multiset-opt networks");
  }
  if (!net.input.empty() && net.plan != plan_for(net.kind, net.input)) {
    report(std::nullopt, "measurement plan does not match the rule for kind " +
                             std::string(to_string(net.kind)));
  }
  return out;
}

/// Throws ErrorCode::validation listing every violation, if any.
inline void require_valid(const WireNetwork& net) {
  auto violations = validate_network(net);
  if (violations.empty()) return;
  std::string msg = "invalid network:";
  for (const auto& v : violations) msg += "\n  " + v.message;
  throw Error(ErrorCode::validation, msg);
}

struct NetworkStats {
  std::size_t wire_count = 0;
  Row max_row = 0;
  std::size_t rows_touched = 0;
  std::size_t depth = 0;
};

inline NetworkStats network_stats(const WireNetwork& net) {
  NetworkStats stats;
  stats.wire_count = net.wires.size();
  stats.max_row = net.max_row;

  std::unordered_set<Row> rows;
  std::unordered_map<std::uint64_t, std::size_t> depth_of;
  depth_of.reserve(net.wires.size());
  for (const Wire& w : net.wires) {
    rows.insert(w.start_row);
    rows.insert(w.end_row);
  }
  stats.rows_touched = rows.size();

  // Memoised walk up the parent chain; works for any order of wires.
  std::unordered_map<std::uint64_t, const Wire*> index;
  for (const Wire& w : net.wires) index.emplace(to_underlying(w.id), &w);
  for (const Wire& w : net.wires) {
    std::vector<const Wire*> chain;
    const Wire* cur = &w;
    std::size_t base = 0;
    while (cur != nullptr) {
      if (auto it = depth_of.find(to_underlying(cur->id)); it != depth_of.end()) {
        base = it->second;
        break;
      }
      chain.push_back(cur);
      if (is_root(cur->parent)) break;
      auto it = index.find(to_underlying(std::get<WireId>(cur->parent)));
      cur = it == index.end() ? nullptr : it->second;
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      depth_of[to_underlying((*it)->id)] = ++base;
    }
    stats.depth = std::max(stats.depth, depth_of[to_underlying(w.id)]);
  }
  return stats;
}

}  // namespace wirelab
