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

#include "gapforge/path_cover.hpp"

#include <algorithm>

#include "gapforge/error.hpp"

namespace gapforge {

PathCover::PathCover(const Graph& g, const Tour& t) : nbr_(g.num_vertices(), {-1, -1}) {
  ValidateTour(g, t);
  const int n = g.num_vertices();
  for (int i = 0; i < n && n > 1; ++i) {
    const Vertex u = t.order[i];
    const Vertex v = t.order[(i + 1) % n];
    if (g.HasEdge(u, v) && !Has(u, v)) Add(u, v);
  }
}

void PathCover::Add(Vertex u, Vertex v) {
  auto slot = [&](Vertex x) -> Vertex& {
    if (nbr_[x][0] < 0) return nbr_[x][0];
    if (nbr_[x][1] < 0) return nbr_[x][1];
    throw ForgeError(ErrorKind::kInvalidTour, "cover vertex " + std::to_string(x) + " already has degree 2");
  };
  slot(u) = v;
  slot(v) = u;
  ++num_edges_;
}

void PathCover::Remove(Vertex u, Vertex v) {
  auto drop = [&](Vertex x, Vertex y) {
    if (nbr_[x][0] == y) nbr_[x][0] = -1;
    else if (nbr_[x][1] == y) nbr_[x][1] = -1;
  };
  drop(u, v);
  drop(v, u);
  --num_edges_;
}

Vertex PathCover::OtherEnd(Vertex v) const {
  Vertex prev = -1;
  Vertex cur = v;
  while (true) {
    Vertex next = -1;
    for (Vertex w : nbr_[cur]) {
      if (w >= 0 && w != prev) next = w;
    }
    if (next < 0 || next == v) return cur;
    prev = cur;
    cur = next;
  }
}

Tour PathCover::ToTour(const Tour& hint) const {
  const int n = num_vertices();
  std::vector<char> seen(n, 0);
  Tour out;
  out.order.reserve(n);
  auto walk = [&](Vertex start) {
    Vertex prev = -1;
    Vertex cur = start;
    while (cur >= 0 && !seen[cur]) {
      seen[cur] = 1;
      out.order.push_back(cur);
      Vertex next = -1;
      for (Vertex w : nbr_[cur]) {
        if (w >= 0 && w != prev && !seen[w]) next = w;
      }
      prev = cur;
      cur = next;
    }
  };
  for (Vertex v : hint.order) {
    if (!seen[v] && Degree(v) < 2) walk(v);
  }
  for (Vertex v : hint.order) {
    if (!seen[v]) walk(v);  // only a Hamiltonian cycle is left
  }
  return out;
}

namespace {

std::vector<Edge> RouteEdges(const std::vector<Vertex>& route) {
  std::vector<Edge> out;
  for (size_t i = 0; i + 1 < route.size(); ++i) out.push_back(Edge::Make(route[i], route[i + 1]));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int MatchingRoute(const PathCover& cover, const Block& block, std::vector<char>& scratch) {
  for (Vertex v : block.vertices) scratch[v] = 1;
  std::vector<Edge> internal;
  for (Vertex v : block.vertices) {
    for (Vertex w : cover.Neighbors(v)) {
      if (w > v && scratch[w]) internal.push_back({v, w});
    }
  }
  for (Vertex v : block.vertices) scratch[v] = 0;
  std::sort(internal.begin(), internal.end());
  for (size_t r = 0; r < block.routes.size(); ++r) {
    if (RouteEdges(block.routes[r]) == internal) return static_cast<int>(r);
  }
  return -1;
}

bool RepairBlock(PathCover& cover, const Graph& g, const Block& block, std::vector<char>& scratch) {
  if (MatchingRoute(cover, block, scratch) >= 0) return true;
  for (Vertex v : block.vertices) scratch[v] = 1;
  std::vector<Edge> removed;
  for (Vertex v : block.vertices) {
    for (Vertex w : cover.Neighbors(v)) {
      if (w >= 0 && (!scratch[w] || v < w)) removed.push_back(Edge::Make(v, w));
    }
  }
  const int before = cover.num_edges();
  for (const Edge& e : removed) cover.Remove(e.u, e.v);

  struct Option {
    int count = -1;
    int route = -1;
    Vertex wa = -1;
    Vertex wb = -1;
  } best;
  for (size_t r = 0; r < block.routes.size(); ++r) {
    const auto& route = block.routes[r];
    const std::vector<Edge> edges = RouteEdges(route);
    for (const Edge& e : edges) cover.Add(e.u, e.v);
    auto candidates = [&](Vertex end) {
      std::vector<Vertex> c{-1};
      for (Vertex w : g.Neighbors(end)) {
        if (!scratch[w] && cover.Degree(w) < 2) c.push_back(w);
      }
      return c;
    };
    for (Vertex wa : candidates(route.front())) {
      for (Vertex wb : candidates(route.back())) {
        if (wa >= 0 && wa == wb) continue;
        const int count = static_cast<int>(edges.size()) + (wa >= 0) + (wb >= 0);
        if (count <= best.count) continue;
        // Attaching both ends to the two ends of one path closes a cycle,
        // which is only allowed when it is Hamiltonian.
        if (wa >= 0 && wb >= 0 && cover.OtherEnd(wa) == wb &&
            cover.num_edges() + 2 != cover.num_vertices()) {
          continue;
        }
        best = {count, static_cast<int>(r), wa, wb};
      }
    }
    for (const Edge& e : edges) cover.Remove(e.u, e.v);
  }

  const int after = before - static_cast<int>(removed.size()) + best.count;
  if (best.route >= 0 && after >= before) {
    const auto& route = block.routes[best.route];
    for (const Edge& e : RouteEdges(route)) cover.Add(e.u, e.v);
    if (best.wa >= 0) cover.Add(route.front(), best.wa);
    if (best.wb >= 0) cover.Add(route.back(), best.wb);
  } else {
    for (const Edge& e : removed) cover.Add(e.u, e.v);
  }
  for (Vertex v : block.vertices) scratch[v] = 0;
  return MatchingRoute(cover, block, scratch) >= 0;
}

RepairStats RepairBlocks(PathCover& cover, const Graph& g, const std::vector<Block>& blocks) {
  RepairStats stats;
  std::vector<char> scratch(g.num_vertices(), 0);
  std::vector<char> done(blocks.size(), 0);
  for (size_t b = 0; b < blocks.size(); ++b) done[b] = MatchingRoute(cover, blocks[b], scratch) >= 0;
  bool progress = true;
  while (progress && stats.passes < 16) {
    progress = false;
    ++stats.passes;
    for (size_t b = 0; b < blocks.size(); ++b) {
      if (done[b]) continue;
      if (RepairBlock(cover, g, blocks[b], scratch)) {
        done[b] = 1;
        ++stats.repaired;
        progress = true;
      }
    }
  }
  // A later repair may have rewired the ends of an earlier block, but never
  // its internal edges, so `done` stays accurate.
  stats.remaining = static_cast<int>(std::count(done.begin(), done.end(), 0));
  return stats;
}

}  // namespace gapforge
