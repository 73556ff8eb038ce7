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

#ifndef GAPFORGE_ORACLES_HPP_
#define GAPFORGE_ORACLES_HPP_

#include <cstdint>
#include <vector>

#include "gapforge/graph.hpp"
#include "gapforge/wheel.hpp"

namespace gapforge {

// Hard limits for the brute-force solvers. Exceeding one raises
// kRefuseExhaustive; nothing is silently sampled.
struct EnumerationBudget {
  int path_vertices = 25;
  int tsp_vertices = 14;
  int subset_vertices = 21;
  int permutation_vertices = 10;
  std::uint64_t max_nodes = 200'000'000;

  // Defaults overridden by FORGE_BUDGET_PATH, FORGE_BUDGET_TSP,
  // FORGE_BUDGET_SUBSET, FORGE_BUDGET_PERM and FORGE_BUDGET_NODES.
  static EnumerationBudget FromEnvironment();
};

using Path = std::vector<Vertex>;

// Every simple from->to path visiting all vertices, in lexicographic order.
std::vector<Path> EnumSpanningPaths(const Graph& g, Vertex from, Vertex to,
                                    const EnumerationBudget& budget = {});

struct Tsp12Solution {
  int cost = 0;
  Tour tour;
};

// Held-Karp over the {1,2} metric.
Tsp12Solution ExactTsp12(const Graph& g, const EnumerationBudget& budget = {});

// Cheapest from->to path through every vertex, weights taken from the
// (1,2) model or from the hop metric of g.
int ExactPathCost(const Graph& g, Vertex from, Vertex to, bool hop_metric,
                  const EnumerationBudget& budget = {});

// Minimum edge count of a connected spanning multi-subgraph with even
// degrees, each edge used at most twice.
int ExactGraphicTsp(const Graph& g, const EnumerationBudget& budget = {});

// Minimum over all cyclic orders, vertex 0 fixed first.
Tsp12Solution PermutationSweep12(const Graph& g, const EnumerationBudget& budget = {});
Tsp12Solution PermutationSweepGraphic(const Graph& g, const EnumerationBudget& budget = {});

struct GraphicCrossCheck {
  bool agree = false;
  int multigraph_cost = 0;
  int permutation_cost = 0;
  Tour witness;
};
GraphicCrossCheck CrossCheckGraphic(const Graph& g, const EnumerationBudget& budget = {});

// Twin of CheckAmplifier: plain counting loop over subset bitmasks with
// each cut recomputed from the edge list.
AmplifierVerdict ExhaustiveSubsets(const WheelAmplifier& w, const EnumerationBudget& budget = {});

// All connected simple graphs on 1..max_n vertices, one per isomorphism
// class. max_n <= 6.
std::vector<Graph> ConnectedGraphCensus(int max_n);

}  // namespace gapforge

#endif  // GAPFORGE_ORACLES_HPP_
