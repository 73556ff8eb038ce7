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

#include "gapforge/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "gapforge/error.hpp"

namespace gapforge {

Graph::Graph(int num_vertices)
    : adjacency_(num_vertices), labels_(num_vertices) {
  if (num_vertices < 0) {
    throw ForgeError(ErrorKind::kInvalidInput, "negative vertex count");
  }
}

Vertex Graph::AddVertex(std::string label) {
  adjacency_.emplace_back();
  labels_.push_back(std::move(label));
  return static_cast<Vertex>(adjacency_.size() - 1);
}

void Graph::AddEdge(Vertex a, Vertex b) {
  const int n = num_vertices();
  if (a < 0 || b < 0 || a >= n || b >= n) {
    throw ForgeError(ErrorKind::kInvalidInput,
                     "edge {" + std::to_string(a) + "," + std::to_string(b) +
                         "} references an undeclared vertex");
  }
  if (a == b) {
    throw ForgeError(ErrorKind::kInvalidInput,
                     "self-loop at vertex " + std::to_string(a));
  }
  if (HasEdge(a, b)) {
    throw ForgeError(ErrorKind::kInvalidInput,
                     "duplicate edge {" + std::to_string(a) + "," +
                         std::to_string(b) + "}");
  }
  adjacency_[a].push_back(b);
  adjacency_[b].push_back(a);
  ++num_edges_;
}

void Graph::RemoveEdge(Vertex a, Vertex b) {
  if (!HasEdge(a, b)) {
    throw ForgeError(ErrorKind::kInvalidInput,
                     "no edge {" + std::to_string(a) + "," +
                         std::to_string(b) + "} to remove");
  }
  std::erase(adjacency_[a], b);
  std::erase(adjacency_[b], a);
  --num_edges_;
}

bool Graph::HasEdge(Vertex a, Vertex b) const {
  const int n = num_vertices();
  if (a < 0 || b < 0 || a >= n || b >= n) return false;
  const auto& shorter =
      adjacency_[a].size() <= adjacency_[b].size() ? adjacency_[a] : adjacency_[b];
  const Vertex other = adjacency_[a].size() <= adjacency_[b].size() ? b : a;
  return std::find(shorter.begin(), shorter.end(), other) != shorter.end();
}

std::vector<Edge> Graph::Edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (Vertex u = 0; u < num_vertices(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Graph::IsConnected() const {
  if (num_vertices() == 0) return true;
  const auto dist = BfsDistances(*this, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

bool operator==(const Graph& a, const Graph& b) {
  return a.num_vertices() == b.num_vertices() && a.Edges() == b.Edges() &&
         a.labels_ == b.labels_;
}

int DistanceMatrix::MaxEntry() const {
  return d_.empty() ? 0 : *std::max_element(d_.begin(), d_.end());
}

void ValidateTour(const Graph& g, const Tour& t) {
  const int n = g.num_vertices();
  if (static_cast<int>(t.order.size()) != n) {
    throw ForgeError(ErrorKind::kInvalidTour,
                     "tour has " + std::to_string(t.order.size()) +
                         " entries for " + std::to_string(n) + " vertices");
  }
  std::vector<char> seen(n, 0);
  for (Vertex v : t.order) {
    if (v < 0 || v >= n) {
      throw ForgeError(ErrorKind::kInvalidTour,
                       "tour visits unknown vertex " + std::to_string(v));
    }
    if (seen[v]) {
      throw ForgeError(ErrorKind::kInvalidTour,
                       "tour visits vertex " + std::to_string(v) + " twice");
    }
    seen[v] = 1;
  }
}

Cost12 TourCost12(const Graph& g, const Tour& t) {
  ValidateTour(g, t);
  const int n = g.num_vertices();
  int hops = 0;
  for (int i = 0; i < n && n > 1; ++i) {
    if (!g.HasEdge(t.order[i], t.order[(i + 1) % n])) ++hops;
  }
  return {n + hops, 2 * hops};
}

std::vector<int> BfsDistances(const Graph& g, Vertex source) {
  std::vector<int> dist(g.num_vertices(), -1);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.Neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

DistanceMatrix MetricClosure(const Graph& g) {
  const int n = g.num_vertices();
  DistanceMatrix m(n);
  for (Vertex s = 0; s < n; ++s) {
    const auto dist = BfsDistances(g, s);
    for (Vertex v = 0; v < n; ++v) {
      if (dist[v] < 0) {
        throw ForgeError(ErrorKind::kNoMetric, "graph is disconnected");
      }
      m.at(s, v) = dist[v];
    }
  }
  return m;
}

int TourCostGraphic(const DistanceMatrix& metric, const Tour& t) {
  const int n = metric.size();
  if (static_cast<int>(t.order.size()) != n) {
    throw ForgeError(ErrorKind::kInvalidTour, "tour length does not match metric");
  }
  int cost = 0;
  for (int i = 0; i < n && n > 1; ++i) {
    cost += metric(t.order[i], t.order[(i + 1) % n]);
  }
  return cost;
}

int TourCostGraphic(const Graph& g, const Tour& t) {
  if (!g.IsConnected()) {
    throw ForgeError(ErrorKind::kNoMetric, "graph is disconnected");
  }
  ValidateTour(g, t);
  // Adjacent pairs cost 1; only jumps need a search, which keeps memory
  // linear for large instances.
  const int n = g.num_vertices();
  std::vector<int> dist(n, -1);
  std::vector<Vertex> touched;
  std::deque<Vertex> queue;
  int cost = 0;
  for (int i = 0; i < n && n > 1; ++i) {
    const Vertex from = t.order[i];
    const Vertex to = t.order[(i + 1) % n];
    if (g.HasEdge(from, to)) {
      ++cost;
      continue;
    }
    queue.assign(1, from);
    dist[from] = 0;
    touched.assign(1, from);
    while (dist[to] < 0) {
      const Vertex u = queue.front();
      queue.pop_front();
      for (Vertex w : g.Neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          touched.push_back(w);
          queue.push_back(w);
        }
      }
    }
    cost += dist[to];
    for (Vertex v : touched) dist[v] = -1;
  }
  return cost;
}

Graph InducedSubgraph(const Graph& g, const std::vector<char>& keep,
                      std::vector<Vertex>* old_id) {
  std::vector<Vertex> new_id(g.num_vertices(), -1);
  Graph sub;
  std::vector<Vertex> back;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (keep[v]) {
      new_id[v] = sub.AddVertex(g.Label(v));
      back.push_back(v);
    }
  }
  for (const Edge& e : g.Edges()) {
    if (keep[e.u] && keep[e.v]) sub.AddEdge(new_id[e.u], new_id[e.v]);
  }
  if (old_id) *old_id = std::move(back);
  return sub;
}

DegreeProfile GetDegreeProfile(const Graph& g) {
  DegreeProfile p;
  if (g.num_vertices() == 0) {
    p.is_regular = true;
    return p;
  }
  p.min_degree = g.Degree(0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    p.max_degree = std::max(p.max_degree, g.Degree(v));
    p.min_degree = std::min(p.min_degree, g.Degree(v));
  }
  p.is_regular = p.min_degree == p.max_degree;
  return p;
}

}  // namespace gapforge
