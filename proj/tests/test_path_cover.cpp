// Copyright 2026 The gapforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "gapforge/gadgets.hpp"
#include "gapforge/path_cover.hpp"
#include "local_oracles.hpp"

namespace gapforge {
namespace {

Block ParityBlock(const GadgetBlueprint& p) {
  Block b;
  for (Vertex v = 0; v < p.graph.num_vertices(); ++v) b.vertices.push_back(v);
  for (TraversalKind k : {TraversalKind::kZero, TraversalKind::kOne}) {
    std::vector<Vertex> route;
    for (const auto& n : ParityTraversal(p, k)) route.push_back(p.Id(n));
    b.routes.push_back(route);
  }
  return b;
}

TEST(PathCover, CostMatchesTourCost) {
  std::mt19937_64 rng(1);
  const Graph g = ParityGadget().graph;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Vertex> order(8);
    for (int i = 0; i < 8; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    const PathCover cover(g, Tour{order});
    EXPECT_EQ(cover.Cost12(), local::Cost12(g, order));
    const Tour back = cover.ToTour(Tour{order});
    EXPECT_TRUE(local::IsPermutation(back.order, 8));
    EXPECT_LE(local::Cost12(g, back.order), local::Cost12(g, order));
  }
}

TEST(PathCover, HamiltonianCycle) {
  Graph c5(5);
  for (int i = 0; i < 5; ++i) c5.AddEdge(i, (i + 1) % 5);
  const PathCover cover(c5, Tour{{0, 1, 2, 3, 4}});
  EXPECT_TRUE(cover.IsHamiltonianCycle());
  EXPECT_EQ(cover.Cost12(), 5);
}

// Random orders of a lone parity gadget always end on a 0/1 traversal.
TEST(RepairBlocks, LoneParityGadget) {
  const GadgetBlueprint p = ParityGadget();
  const Block block = ParityBlock(p);
  std::mt19937_64 rng(2);
  std::vector<char> scratch(8, 0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Vertex> order(8);
    for (int i = 0; i < 8; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    PathCover cover(p.graph, Tour{order});
    const int before = cover.Cost12();
    const RepairStats s = RepairBlocks(cover, p.graph, {block});
    EXPECT_EQ(s.remaining, 0);
    EXPECT_GE(MatchingRoute(cover, block, scratch), 0);
    EXPECT_LE(cover.Cost12(), before);
  }
}

TEST(RepairBlocks, ConsistentInputUntouched) {
  const GadgetBlueprint p = ParityGadget();
  const Block block = ParityBlock(p);
  PathCover cover(p.graph, Tour{block.routes[1]});
  const RepairStats s = RepairBlocks(cover, p.graph, {block});
  EXPECT_EQ(s.repaired, 0);
  EXPECT_EQ(s.remaining, 0);
  std::vector<char> scratch(8, 0);
  EXPECT_EQ(MatchingRoute(cover, block, scratch), 1);
}

}  // namespace
}  // namespace gapforge
