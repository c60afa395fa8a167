//  Copyright 2026 The bftlog Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.


#include <gtest/gtest.h>

#include "bftlog/lattice_oracle.hpp"

namespace bftlog {
namespace {

// Rooted trees on n + 1 nodes: 1, 1, 2, 4, 9, 20, 48, 115, 286, 719, 1842.
TEST(ForestShapes, CountsMatchRootedTreeNumbers) {
  const std::vector<std::size_t> expected{1, 1, 2, 4, 9, 20, 48, 115, 286, 719, 1842};
  for (std::size_t n = 0; n < expected.size(); ++n) {
    EXPECT_EQ(forest_shapes(n).size(), expected[n]) << n;
  }
}

TEST(ForestShapes, ParentsPrecedeChildrenAndShapesAreDistinct) {
  for (std::size_t n = 0; n <= 6; ++n) {
    auto shapes = forest_shapes(n);
    std::set<std::vector<int>> seen(shapes.begin(), shapes.end());
    EXPECT_EQ(seen.size(), shapes.size());
    for (const auto& shape : shapes) {
      for (std::size_t i = 0; i < shape.size(); ++i) EXPECT_LT(shape[i], static_cast<int>(i));
    }
  }
}

TEST(EnumerateLogs, StarOfThreeRoots) {
  const Keypair& keys = oracle_keys(1)[0];
  MessageStore store;
  for (const auto& m : build_forest(keys, std::vector<int>{-1, -1, -1})) store.insert(m);
  // growing at bottom or one of 3 roots, shrinking at bottom with 4 fork sets.
  EXPECT_EQ(enumerate_logs(store, keys.author).size(), 8u);
}

TEST(Oracle, PassesOnSmallBounds) {
  OracleOptions options;
  options.max_msgs = 4;
  options.max_authors = 2;
  options.frontier_cases = 500;
  auto report = run_oracle(options);
  EXPECT_TRUE(report.passed()) << report.summary();
}

TEST(Oracle, EmptyBoundOnlySeesInitialState) {
  OracleOptions options;
  options.max_msgs = 0;
  options.max_authors = 1;
  options.frontier_cases = 50;
  auto report = run_oracle(options);
  EXPECT_TRUE(report.passed()) << report.summary();
}

TEST(Oracle, CatchesFlippedPhaseRule) {
  auto report = check_log_lattice(3, LogOrderRule::kFlippedPhase);
  EXPECT_FALSE(report.passed());
  auto frontier = check_frontier_lattice(5, 2, 500, LogOrderRule::kFlippedPhase, 1);
  EXPECT_FALSE(frontier.passed());
}

TEST(Oracle, CatchesUnconditionalPhaseRule) {
  auto report = check_log_lattice(4, LogOrderRule::kUnconditionalPhase);
  EXPECT_FALSE(report.passed());
  for (const auto& c : report.checks) {
    if (c.name == "log.least_upper_bound") {
      EXPECT_FALSE(c.passed());
    }
  }
}

}  // namespace
}  // namespace bftlog
