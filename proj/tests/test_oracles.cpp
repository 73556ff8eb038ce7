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

#include <algorithm>
#include <cstdlib>
#include <random>

#include "gapforge/error.hpp"
#include "gapforge/gadgets.hpp"
#include "gapforge/oracles.hpp"
#include "local_oracles.hpp"

namespace gapforge {
namespace {

Graph Complete(int n) {
  Graph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.AddEdge(a, b);
  return g;
}

Graph PathGraph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.AddEdge(i, i + 1);
  return g;
}

Graph RandomConnected(int n, double p, std::mt19937_64& rng) {
  for (;;) {
    Graph g(n);
    std::bernoulli_distribution coin(p);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (coin(rng)) g.AddEdge(a, b);
    if (g.IsConnected()) return g;
  }
}

TEST(EnumSpanningPaths, Examples) {
  const auto tri = EnumSpanningPaths(Complete(3), 0, 1);
  ASSERT_EQ(tri.size(), 1u);
  EXPECT_EQ(tri[0], (Path{0, 2, 1}));
  EXPECT_EQ(EnumSpanningPaths(Complete(4), 0, 1).size(), 2u);
}

TEST(EnumSpanningPaths, SymmetricAndMatchesOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = RandomConnected(7, 0.45, rng);
    const auto ab = EnumSpanningPaths(g, 0, 6);
    auto ba = EnumSpanningPaths(g, 6, 0);
    for (auto& p : ba) std::reverse(p.begin(), p.end());
    std::sort(ba.begin(), ba.end());
    EXPECT_EQ(ab, ba);
    EXPECT_EQ(static_cast<long>(ab.size()), local::CountSpanningPaths(g, 0, 6));
  }
}

TEST(EnumSpanningPaths, Budget) {
  EnumerationBudget b;
  b.path_vertices = 5;
  EXPECT_THROW(EnumSpanningPaths(Complete(6), 0, 1, b), ForgeError);
}

TEST(ExactTsp12, Examples) {
  EXPECT_EQ(ExactTsp12(Complete(4)).cost, 4);
  Graph star(4);
  for (int l = 1; l < 4; ++l) star.AddEdge(0, l);
  const Tsp12Solution s = ExactTsp12(star);
  EXPECT_EQ(s.cost, 6);
  EXPECT_EQ(TourCost12(star, s.tour).cost, 6);
}

// Ground truth for the catalog: the standalone parity gadget is
// Hamiltonian (l0 a l1 c r0 d r1 b).
TEST(ExactTsp12, ParityGadgetStandalone) {
  const Graph g = ParityGadget().graph;
  const int cost = ExactTsp12(g).cost;
  EXPECT_EQ(cost, local::Sweep12(g));
  EXPECT_EQ(cost, 8);
}

TEST(ExactTsp12, AgreesWithSweep) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 6;
    const Graph g = RandomConnected(n, 0.35, rng);
    const Tsp12Solution s = ExactTsp12(g);
    EXPECT_EQ(s.cost, local::Sweep12(g));
    EXPECT_EQ(s.cost, local::Cost12(g, s.tour.order));
  }
}

TEST(ExactTsp12, Budget) {
  EnumerationBudget b;
  b.tsp_vertices = 5;
  EXPECT_THROW(ExactTsp12(Complete(6), b), ForgeError);
}

TEST(ExactGraphicTsp, Examples) {
  EXPECT_EQ(ExactGraphicTsp(Complete(3)), 3);
  EXPECT_EQ(ExactGraphicTsp(PathGraph(3)), 4);
  Graph c4(4);
  for (int i = 0; i < 4; ++i) c4.AddEdge(i, (i + 1) % 4);
  c4.AddEdge(0, 2);
  EXPECT_EQ(ExactGraphicTsp(c4), 4);
  Graph split(3);
  split.AddEdge(0, 1);
  EXPECT_THROW(ExactGraphicTsp(split), ForgeError);
}

TEST(ExactGraphicTsp, LowerBoundAndHamiltonicity) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 6;
    const Graph g = RandomConnected(n, 0.3, rng);
    const int cost = ExactGraphicTsp(g);
    EXPECT_EQ(cost, local::SweepGraphic(g));
    EXPECT_GE(cost, n);
    EXPECT_EQ(cost == n, local::Sweep12(g) == n);
  }
}

TEST(CrossCheckGraphic, Examples) {
  const GraphicCrossCheck tri = CrossCheckGraphic(Complete(3));
  EXPECT_TRUE(tri.agree);
  EXPECT_EQ(tri.multigraph_cost, 3);
  const GraphicCrossCheck p4 = CrossCheckGraphic(PathGraph(4));
  EXPECT_TRUE(p4.agree);
  EXPECT_EQ(p4.permutation_cost, 6);
}

TEST(Census, CountsConnectedGraphs) {
  std::vector<int> per_n(7, 0);
  for (const Graph& g : ConnectedGraphCensus(6)) {
    EXPECT_TRUE(g.IsConnected());
    ++per_n[g.num_vertices()];
  }
  EXPECT_EQ(per_n, (std::vector<int>{0, 1, 1, 2, 6, 21, 112}));
}

TEST(Budget, FromEnvironment) {
  setenv("FORGE_BUDGET_TSP", "9", 1);
  EXPECT_EQ(EnumerationBudget::FromEnvironment().tsp_vertices, 9);
  unsetenv("FORGE_BUDGET_TSP");
  EXPECT_EQ(EnumerationBudget::FromEnvironment().tsp_vertices, 14);
}

}  // namespace
}  // namespace gapforge
