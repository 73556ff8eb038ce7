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

#ifndef GAPFORGE_PATH_COVER_HPP_
#define GAPFORGE_PATH_COVER_HPP_

#include <array>
#include <vector>

#include "gapforge/graph.hpp"

namespace gapforge {

// The weight-one edges of a (1,2) tour: vertex-disjoint paths, or a single
// Hamiltonian cycle. Cost is n + #paths, i.e. 2n - #edges, or n for a cycle.
class PathCover {
 public:
  PathCover(const Graph& g, const Tour& t);

  int num_vertices() const { return static_cast<int>(nbr_.size()); }
  int num_edges() const { return num_edges_; }
  bool IsHamiltonianCycle() const { return num_edges_ == num_vertices() && num_edges_ > 2; }
  int Cost12() const { return IsHamiltonianCycle() ? num_vertices() : 2 * num_vertices() - num_edges_; }

  int Degree(Vertex v) const { return (nbr_[v][0] >= 0) + (nbr_[v][1] >= 0); }
  const std::array<Vertex, 2>& Neighbors(Vertex v) const { return nbr_[v]; }
  bool Has(Vertex u, Vertex v) const { return nbr_[u][0] == v || nbr_[u][1] == v; }
  void Add(Vertex u, Vertex v);
  void Remove(Vertex u, Vertex v);

  // Far end of the path containing endpoint v (v itself when isolated).
  Vertex OtherEnd(Vertex v) const;

  // Paths in the order their first vertex appears in `hint`, concatenated.
  Tour ToTour(const Tour& hint) const;

 private:
  std::vector<std::array<Vertex, 2>> nbr_;
  int num_edges_ = 0;
};

// A group of vertices that must be crossed by one of a few admissible
// internal paths, e.g. a parity gadget or an expanded 4-path.
struct Block {
  std::vector<Vertex> vertices;
  std::vector<std::vector<Vertex>> routes;
};

// Index of the route whose edges are exactly the cover's internal edges
// of the block, or -1.
int MatchingRoute(const PathCover& cover, const Block& block, std::vector<char>& scratch);

// Replaces the block's cover edges by the best admissible route plus
// reattached ends. Applied only when the cover keeps at least as many
// edges; returns whether the block is consistent afterwards.
bool RepairBlock(PathCover& cover, const Graph& g, const Block& block, std::vector<char>& scratch);

struct RepairStats {
  int passes = 0;
  int repaired = 0;
  int remaining = 0;  // blocks still inconsistent
};

RepairStats RepairBlocks(PathCover& cover, const Graph& g, const std::vector<Block>& blocks);

}  // namespace gapforge

#endif  // GAPFORGE_PATH_COVER_HPP_
