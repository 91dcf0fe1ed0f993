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

#include "wirelab/core.hpp"

#include <algorithm>

#include "gtest/gtest.h"
#include "wirelab/constructors.hpp"

namespace wirelab {
namespace {

bool names_wire(const std::vector<Violation>& v, std::uint64_t id) {
  return std::any_of(v.begin(), v.end(),
                     [&](const Violation& x) { return x.wire && to_underlying(*x.wire) == id; });
}

TEST(InputMultiset, RejectsZero) {
  EXPECT_THROW(InputMultiset({3, 0, 1}), Error);
}

TEST(ValidateNetwork, BuiltNetworkIsClean) {
  EXPECT_TRUE(validate_network(build_standard({1, 2})).empty());
}

TEST(ValidateNetwork, EndRowMismatchNamesTheWire) {
  auto net = build_standard({1, 2});
  net.wires[1].end_row += 1;
  net.max_row = compute_max_row(net.wires);
  const auto v = validate_network(net);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_TRUE(names_wire(v, 1));
  EXPECT_NE(v[0].message.find("end_row"), std::string::npos);
}

TEST(ValidateNetwork, ParentEndRowMismatch) {
  auto net = build_standard({1, 2});
  // Wire 2 hangs from wire 0 (0->1); move it so it no longer starts at row 1.
  net.wires[2].start_row = 2;
  net.wires[2].end_row = 4;
  net.max_row = compute_max_row(net.wires);
  const auto v = validate_network(net);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_TRUE(names_wire(v, 2));
}

TEST(ValidateNetwork, CatchesCyclesDuplicatesAndLengths) {
  auto net = build_standard({1, 2, 3});
  net.wires[0].parent = WireId{3};  // 0 -> 3 -> 0
  net.wires[0].start_row = net.wires[3].end_row;
  net.wires[0].end_row = net.wires[0].start_row + net.wires[0].length;
  EXPECT_FALSE(validate_network(net).empty());

  auto dup = build_standard({1, 2});
  dup.wires[2].id = WireId{1};
  EXPECT_TRUE(names_wire(validate_network(dup), 1));

  auto bad_len = build_standard({1, 2});
  bad_len.wires[0].length = 2;
  bad_len.wires[0].end_row = 2;
  EXPECT_TRUE(names_wire(validate_network(bad_len), 0));
}

TEST(ValidateNetwork, PlanAndCountingFlag) {
  auto net = build_reduced({4, 1});
  net.plan = MeasurementPlan{{0}};
  EXPECT_EQ(validate_network(net).size(), 1u);
  net = build_multiset_optimized({4, 1});
  net.counting_supported = true;
  EXPECT_EQ(validate_network(net).size(), 1u);
}

TEST(NetworkStats, Examples) {
  const auto s31 = network_stats(build_standard({5, 2, 1, 3, 4}));
  EXPECT_EQ(s31.wire_count, 31u);
  EXPECT_EQ(s31.max_row, 15u);
  EXPECT_EQ(s31.depth, 5u);
  // Rows 0..15 are all reachable sums of {5,2,1,3,4}.
  EXPECT_EQ(s31.rows_touched, 16u);

  const auto s1 = network_stats(build_standard({7}));
  EXPECT_EQ(s1.wire_count, 1u);
  EXPECT_EQ(s1.max_row, 7u);
  EXPECT_EQ(s1.depth, 1u);
  EXPECT_EQ(s1.rows_touched, 2u);

  EXPECT_EQ(network_stats(build_reduced({5, 2, 1, 3, 4})).wire_count, 16u);
}

}  // namespace
}  // namespace wirelab
