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

// Query models over a built network:
//   decision  - is row b+q electrically connected to row b for some base b
//   counting  - chains in the attachment tree that end at b+q
//   physical  - steady-state current through the row network at fixed voltage
// Rows are ideal conductors, so every row is a single electrical node.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "wirelab/core.hpp"

namespace wirelab {

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) noexcept {
  const std::uint64_t sum = a + b;
  return sum < a ? std::numeric_limits<std::uint64_t>::max() : sum;
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) noexcept {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

inline void check_query(Row q) {
  if (q < 1) throw Error(ErrorCode::invalid_query, "invalid query: target must be >= 1");
}

}  // namespace detail

/// Electrical view of a network: one node per row that carries a wire endpoint
/// or a measurement base, one edge per unordered row pair with the parallel
/// wires between them merged into a single conductance.
class RowMultigraph {
 public:
  using Node = std::size_t;

  struct Edge {
    Node low = 0;   // node with the smaller row
    Node high = 0;
    double conductance = 0.0;  // siemens
    std::uint32_t multiplicity = 0;
  };

  struct Neighbor {
    Node node = 0;
    std::size_t edge = 0;
  };

  RowMultigraph() = default;

  RowMultigraph(const WireNetwork& net, double unit_resistance) {
    std::vector<Row> rows;
    rows.reserve(2 * net.wires.size() + net.plan.bases.size());
    for (const Wire& w : net.wires) {
      rows.push_back(w.start_row);
      rows.push_back(w.end_row);
    }
    rows.insert(rows.end(), net.plan.bases.begin(), net.plan.bases.end());
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    rows_ = std::move(rows);

    // Wires between the same two rows collapse into one edge.
    std::vector<std::pair<std::pair<Node, Node>, Value>> endpoints;
    endpoints.reserve(net.wires.size());
    for (const Wire& w : net.wires) {
      endpoints.push_back({{*node_of(w.start_row), *node_of(w.end_row)}, w.length});
    }
    std::sort(endpoints.begin(), endpoints.end());
    for (const auto& [pair, length] : endpoints) {
      if (edges_.empty() || edges_.back().low != pair.first || edges_.back().high != pair.second) {
        edges_.push_back(Edge{pair.first, pair.second, 0.0, 0});
      }
      edges_.back().conductance += 1.0 / (static_cast<double>(length) * unit_resistance);
      ++edges_.back().multiplicity;
    }

    offsets_.assign(rows_.size() + 1, 0);
    for (const Edge& e : edges_) {
      ++offsets_[e.low + 1];
      ++offsets_[e.high + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adjacency_.resize(2 * edges_.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      adjacency_[fill[edges_[i].low]++] = Neighbor{edges_[i].high, i};
      adjacency_[fill[edges_[i].high]++] = Neighbor{edges_[i].low, i};
    }

    detail::UnionFind uf(rows_.size());
    for (const Edge& e : edges_) uf.unite(e.low, e.high);
    component_.resize(rows_.size());
    for (Node v = 0; v < rows_.size(); ++v) component_[v] = uf.find(v);
  }

  std::size_t node_count() const noexcept { return rows_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  Row row(Node v) const { return rows_[v]; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Neighbor> neighbors(Node v) const {
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::optional<Node> node_of(Row r) const {
    auto it = std::lower_bound(rows_.begin(), rows_.end(), r);
    if (it == rows_.end() || *it != r) return std::nullopt;
    return static_cast<Node>(it - rows_.begin());
  }

  bool connected(Row a, Row b) const {
    auto na = node_of(a);
    auto nb = node_of(b);
    return na && nb && component_[*na] == component_[*nb];
  }

 private:
  std::vector<Row> rows_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<Node> component_;
};

/// Node potentials and terminal current for one source/sink measurement.
struct NodalSolution {
  bool connected = false;
  double current = 0.0;  // amps entering the sink
  double source_current = 0.0;  // amps leaving the source
  /// Largest |net current| at a non-terminal node divided by `current`.
  double max_relative_residual = 0.0;
  std::vector<RowMultigraph::Node> nodes;  // the source's connected component
  std::vector<double> potentials;          // volts, aligned with `nodes`
};

/// Component size above which the sparse factorization replaces the dense one.
inline constexpr std::size_t dense_solver_limit = 2000;

/// Fixes `source` at `voltage` and grounds `sink`, then solves the conductance
/// Laplacian of their shared component for the interior potentials. Systems
/// with more than `dense_limit` unknowns use a sparse factorization.
inline NodalSolution solve_nodal(const RowMultigraph& g, Row source, Row sink, double voltage,
                                 std::size_t dense_limit = dense_solver_limit) {
  NodalSolution sol;
  if (source == sink || !g.connected(source, sink)) return sol;
  sol.connected = true;
  const auto s = *g.node_of(source);
  const auto t = *g.node_of(sink);

  // Collect the component by BFS and number the interior nodes.
  constexpr std::size_t no_index = std::numeric_limits<std::size_t>::max();
  std::unordered_map<RowMultigraph::Node, std::size_t> position;
  sol.nodes.push_back(s);
  position.emplace(s, 0);
  for (std::size_t head = 0; head < sol.nodes.size(); ++head) {
    for (const auto& nb : g.neighbors(sol.nodes[head])) {
      if (position.emplace(nb.node, sol.nodes.size()).second) sol.nodes.push_back(nb.node);
    }
  }
  std::vector<std::size_t> unknown(sol.nodes.size(), no_index);
  std::size_t m = 0;
  for (std::size_t i = 0; i < sol.nodes.size(); ++i) {
    if (sol.nodes[i] != s && sol.nodes[i] != t) unknown[i] = m++;
  }

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t i = 0; i < sol.nodes.size(); ++i) {
    if (unknown[i] == no_index) continue;
    const auto row = static_cast<Eigen::Index>(unknown[i]);
    for (const auto& nb : g.neighbors(sol.nodes[i])) {
      const double c = g.edges()[nb.edge].conductance;
      entries.emplace_back(row, row, c);
      if (nb.node == s) {
        rhs[row] += c * voltage;
      } else if (nb.node != t) {
        entries.emplace_back(row, static_cast<Eigen::Index>(unknown[position.at(nb.node)]), -c);
      }
    }
  }

  Eigen::VectorXd x;
  if (m > 0) {
    Eigen::SparseMatrix<double> lap(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    lap.setFromTriplets(entries.begin(), entries.end());
    if (m <= dense_limit) {
      Eigen::MatrixXd dense(lap);
      Eigen::LDLT<Eigen::MatrixXd> ldlt(dense);
      if (ldlt.info() != Eigen::Success) {
        throw Error(ErrorCode::internal, "singular nodal system");
      }
      x = ldlt.solve(rhs);
    } else {
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(lap);
      if (ldlt.info() != Eigen::Success) {
        throw Error(ErrorCode::internal, "singular nodal system");
      }
      x = ldlt.solve(rhs);
    }
  }

  sol.potentials.resize(sol.nodes.size());
  for (std::size_t i = 0; i < sol.nodes.size(); ++i) {
    if (sol.nodes[i] == s) {
      sol.potentials[i] = voltage;
    } else if (sol.nodes[i] == t) {
      sol.potentials[i] = 0.0;
    } else {
      sol.potentials[i] = x[static_cast<Eigen::Index>(unknown[i])];
    }
  }

  auto net_outflow = [&](std::size_t i) {
    double flow = 0.0;
    for (const auto& nb : g.neighbors(sol.nodes[i])) {
      flow += g.edges()[nb.edge].conductance *
              (sol.potentials[i] - sol.potentials[position.at(nb.node)]);
    }
    return flow;
  };
  sol.current = -net_outflow(position.at(t));
  sol.source_current = net_outflow(0);
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.nodes.size(); ++i) {
    if (unknown[i] != no_index) worst = std::max(worst, std::abs(net_outflow(i)));
  }
  sol.max_relative_residual = sol.current > 0.0 ? worst / sol.current : worst;
  return sol;
}

/// Two-point effective resistance in ohms, or nullopt when `a` and `b` are not
/// connected (including rows that are not nodes of the graph).
inline std::optional<double> effective_resistance(const RowMultigraph& g, Row a, Row b) {
  if (a == b) throw Error(ErrorCode::invalid_query, "effective resistance needs two distinct rows");
  const auto sol = solve_nodal(g, a, b, 1.0);
  if (!sol.connected || !(sol.current > 0.0)) return std::nullopt;
  return 1.0 / sol.current;
}

/// Solution count from a measured current: s = q * R_u * m / V. Currents at or
/// below the detection threshold mean no solution.
inline double estimate_count(Row q, double current, const ElectricalConfig& cfg) {
  if (current <= cfg.detection_threshold) return 0.0;
  return static_cast<double>(q) * cfg.unit_resistance * current / cfg.voltage;
}

/// Answers queries against one network. Builds the row graph and the
/// chain-family bookkeeping once, so batches of queries share them. Holds a
/// reference; the network must outlive the engine.
class QueryEngine {
 public:
  explicit QueryEngine(const WireNetwork& net, ElectricalConfig cfg = {})
      : net_(&net), cfg_(cfg), graph_(net, cfg.unit_resistance) {
    cfg_.check();
    index_chain_families();
  }

  const RowMultigraph& graph() const noexcept { return graph_; }
  const ElectricalConfig& config() const noexcept { return cfg_; }

  bool decide(Row q) const {
    detail::check_query(q);
    return std::any_of(net_->plan.bases.begin(), net_->plan.bases.end(),
                       [&](Row b) { return graph_.connected(b, b + q); });
  }

  std::uint64_t exact_count(Row q) const {
    detail::check_query(q);
    if (!net_->counting_supported) {
      throw Error(ErrorCode::counting_unsupported,
                  "counting unsupported: multiset-opt networks answer decisions only");
    }
    std::uint64_t count = 0;
    const auto& bases = net_->plan.bases;
    for (std::size_t i = 0; i < net_->wires.size(); ++i) {
      const Row end = net_->wires[i].end_row;
      if (bases.size() == 1) {
        count += end == bases[0] + q;
      } else {
        // Measurement A sees the split wire and everything below it; B sees
        // every wire except the split wire, offset by the split value.
        count += split_subtree_[i] && end == bases[0] + q;
        count += !is_split_[i] && end == bases[1] + q;
      }
    }
    return count;
  }

  NodalSolution solve(Row base, Row q) const {
    detail::check_query(q);
    return solve_nodal(graph_, base, base + q, cfg_.voltage);
  }

  std::vector<double> physical_measure(Row q) const {
    std::vector<double> currents;
    for (Row b : net_->plan.bases) currents.push_back(std::max(0.0, solve(b, q).current));
    return currents;
  }

  /// Monotone paths from `base` up to `base + q`, counting parallel wires
  /// separately. Saturates at the largest uint64 value.
  std::uint64_t row_path_count(Row base, Row q) const {
    detail::check_query(q);
    const auto from = graph_.node_of(base);
    const auto to = graph_.node_of(base + q);
    if (!from || !to) return 0;
    std::vector<std::uint64_t> paths(*to - *from + 1, 0);
    paths[0] = 1;
    for (auto v = *from; v < *to; ++v) {
      const std::uint64_t here = paths[v - *from];
      if (here == 0) continue;
      for (const auto& nb : graph_.neighbors(v)) {
        if (nb.node <= v || nb.node > *to) continue;
        auto& there = paths[nb.node - *from];
        there = detail::saturating_add(
            there, detail::saturating_mul(here, graph_.edges()[nb.edge].multiplicity));
      }
    }
    return paths.back();
  }

  QueryResult query(Row q) const {
    detail::check_query(q);
    QueryResult r;
    r.query = q;
    r.decision = decide(q);
    if (net_->counting_supported) r.exact_count = exact_count(q);
    r.currents = physical_measure(q);
    double estimate = 0.0;
    bool detected = false;
    for (double m : r.currents) {
      detected = detected || m > cfg_.detection_threshold;
      estimate += estimate_count(q, m, cfg_);
    }
    if (detected) r.estimated_count = estimate;
    for (Row b : net_->plan.bases) {
      r.row_path_count = detail::saturating_add(r.row_path_count, row_path_count(b, q));
    }
    return r;
  }

 private:
  void index_chain_families() {
    const auto& wires = net_->wires;
    is_split_.assign(wires.size(), 0);
    split_subtree_.assign(wires.size(), 0);
    if (net_->plan.bases.size() < 2) return;

    std::unordered_map<std::uint64_t, std::size_t> index;
    for (std::size_t i = 0; i < wires.size(); ++i) index.emplace(to_underlying(wires[i].id), i);
    for (std::size_t i = 0; i < wires.size(); ++i) {
      const auto* root = std::get_if<RootAttach>(&wires[i].parent);
      is_split_[i] = root != nullptr && root->row == net_->plan.bases[0] &&
                     wires[i].end_row == net_->plan.bases[1];
    }
    // 0 unknown, 1 inside the split subtree, 2 outside.
    std::vector<char> state(wires.size(), 0);
    for (std::size_t i = 0; i < wires.size(); ++i) {
      std::vector<std::size_t> chain;
      std::size_t cur = i;
      char verdict = 2;
      while (true) {
        if (state[cur] != 0) {
          verdict = state[cur];
          break;
        }
        chain.push_back(cur);
        if (is_split_[cur]) {
          verdict = 1;
          break;
        }
        const auto* parent = std::get_if<WireId>(&wires[cur].parent);
        if (parent == nullptr) break;
        auto it = index.find(to_underlying(*parent));
        if (it == index.end()) break;
        cur = it->second;
      }
      for (std::size_t c : chain) state[c] = verdict;
    }
    for (std::size_t i = 0; i < wires.size(); ++i) split_subtree_[i] = state[i] == 1;
  }

  const WireNetwork* net_;
  ElectricalConfig cfg_;
  RowMultigraph graph_;
  std::vector<char> is_split_;
  std::vector<char> split_subtree_;
};

inline bool decide(const WireNetwork& net, Row q) {
  return QueryEngine(net).decide(q);
}

inline std::uint64_t exact_count(const WireNetwork& net, Row q) {
  if (!net.counting_supported) {
    throw Error(ErrorCode::counting_unsupported,
                "counting unsupported: multiset-opt networks answer decisions only");
  }
  return QueryEngine(net).exact_count(q);
}

inline std::vector<double> physical_measure(const WireNetwork& net, Row q,
                                            const ElectricalConfig& cfg = {}) {
  return QueryEngine(net, cfg).physical_measure(q);
}

inline std::uint64_t row_path_count(const WireNetwork& net, Row base, Row q) {
  return QueryEngine(net).row_path_count(base, q);
}

inline QueryResult query(const WireNetwork& net, Row q, const ElectricalConfig& cfg = {}) {
  return QueryEngine(net, cfg).query(q);
}

}  // namespace wirelab
