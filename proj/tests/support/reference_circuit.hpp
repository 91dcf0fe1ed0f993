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

// Reference circuit solver for tests. Works from the raw wire list, with its
// own node numbering, component search and Gaussian elimination, so it shares
// no code with the library's nodal solver.

#include <cmath>
#include <cstddef>
#include <map>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "wirelab/core.hpp"

namespace wirelab::testing {

/// Current (amps) drawn by a source of `voltage` between rows `source` and
/// `sink`, with every wire a resistor of length * unit_resistance ohms.
inline double reference_current(const WireNetwork& net, Row source, Row sink, double voltage,
                                double unit_resistance) {
  std::map<Row, std::vector<std::pair<Row, double>>> adj;
  for (const Wire& w : net.wires) {
    const double r = w.length * unit_resistance;
    adj[w.start_row].push_back({w.end_row, r});
    adj[w.end_row].push_back({w.start_row, r});
  }
  if (!adj.contains(source) || !adj.contains(sink)) return 0.0;

  std::set<Row> seen{source};
  std::queue<Row> todo;
  todo.push(source);
  while (!todo.empty()) {
    const Row r = todo.front();
    todo.pop();
    for (auto [next, ohms] : adj[r]) {
      if (seen.insert(next).second) todo.push(next);
    }
  }
  if (!seen.contains(sink)) return 0.0;

  // Full nodal equations for every node in the component; terminal rows are
  // replaced by their fixed potentials.
  std::map<Row, std::size_t> id;
  for (Row r : seen) id.emplace(r, id.size());
  const std::size_t n = id.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (auto [row, i] : id) {
    if (row == source || row == sink) {
      a[i][i] = 1.0;
      a[i][n] = row == source ? voltage : 0.0;
      continue;
    }
    for (auto [next, ohms] : adj[row]) {
      a[i][i] += 1.0 / ohms;
      a[i][id.at(next)] -= 1.0 / ohms;
    }
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a[i][n] / a[i][i];

  double current = 0.0;
  for (auto [next, ohms] : adj[sink]) current += v[id.at(next)] / ohms;
  return current;
}

}  // namespace wirelab::testing
