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

#ifndef GAPFORGE_GRAPH_HPP_
#define GAPFORGE_GRAPH_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gapforge {

using Vertex = std::int32_t;

// Unordered edge, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static Edge Make(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on dense vertex ids 0..n-1 with optional labels.
//
// For a (1,2)-TSP instance the graph is the set of weight-one edges; for a
// Graphic TSP instance it is the graph itself and distances come from the
// shortest-path metric.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int num_vertices);

  Vertex AddVertex(std::string label = {});
  // Throws kInvalidInput on self-loops, duplicates or unknown endpoints.
  void AddEdge(Vertex a, Vertex b);
  void RemoveEdge(Vertex a, Vertex b);

  int num_vertices() const { return static_cast<int>(adjacency_.size()); }
  int num_edges() const { return num_edges_; }
  bool HasEdge(Vertex a, Vertex b) const;
  std::span<const Vertex> Neighbors(Vertex v) const { return adjacency_[v]; }
  int Degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }

  // Lexicographically sorted by (min, max) endpoint.
  std::vector<Edge> Edges() const;

  const std::string& Label(Vertex v) const { return labels_[v]; }
  void SetLabel(Vertex v, std::string label) { labels_[v] = std::move(label); }

  bool IsConnected() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::string> labels_;
  int num_edges_ = 0;
};

// Open vertex sequence interpreted cyclically: the wrap pair is charged.
struct Tour {
  std::vector<Vertex> order;
};

struct DegreeProfile {
  int max_degree = 0;
  int min_degree = 0;
  bool is_regular = false;
};

struct Cost12 {
  int cost = 0;
  // Number of endpoints; a double endpoint counts twice. Always even.
  int endpoints = 0;
};

// Row-major n x n matrix of hop distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<size_t>(n) * n, 0) {}

  int size() const { return n_; }
  int operator()(Vertex a, Vertex b) const { return d_[Index(a, b)]; }
  int& at(Vertex a, Vertex b) { return d_[Index(a, b)]; }
  int MaxEntry() const;

 private:
  size_t Index(Vertex a, Vertex b) const {
    return static_cast<size_t>(a) * n_ + static_cast<size_t>(b);
  }
  int n_ = 0;
  std::vector<int> d_;
};

// Throws kInvalidTour unless t visits every vertex of g exactly once.
void ValidateTour(const Graph& g, const Tour& t);

Cost12 TourCost12(const Graph& g, const Tour& t);

// Throws kNoMetric if g is disconnected.
DistanceMatrix MetricClosure(const Graph& g);

int TourCostGraphic(const Graph& g, const Tour& t);
int TourCostGraphic(const DistanceMatrix& metric, const Tour& t);

DegreeProfile GetDegreeProfile(const Graph& g);

// Subgraph on the vertices with keep[v] set, renumbered in increasing
// order; `old_id` maps new ids back. Labels are carried over.
Graph InducedSubgraph(const Graph& g, const std::vector<char>& keep,
                      std::vector<Vertex>* old_id = nullptr);

// Single-source hop distances; unreachable vertices get -1.
std::vector<int> BfsDistances(const Graph& g, Vertex source);

}  // namespace gapforge

#endif  // GAPFORGE_GRAPH_HPP_
