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

// Small independent oracles shared by the test programs. They work from
// the edge list only and avoid the library's own cost and search code.

#ifndef GAPFORGE_TESTS_LOCAL_ORACLES_HPP_
#define GAPFORGE_TESTS_LOCAL_ORACLES_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

#include "gapforge/graph.hpp"
#include "gapforge/hybrid.hpp"
#include "gapforge/lin_system.hpp"

namespace local {

using gapforge::Edge;
using gapforge::Graph;
using gapforge::Vertex;

using Adj = std::vector<std::vector<int>>;

inline Adj AdjacencyOf(const Graph& g) {
  Adj adj(g.num_vertices());
  for (const Edge& e : g.Edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

inline bool Adjacent(const Adj& adj, int a, int b) {
  return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
}

inline int Cost12(const Graph& g, const std::vector<Vertex>& order) {
  const Adj adj = AdjacencyOf(g);
  int cost = 0;
  for (size_t i = 0; i < order.size(); ++i) {
    cost += Adjacent(adj, order[i], order[(i + 1) % order.size()]) ? 1 : 2;
  }
  return cost;
}

inline int Hops(const Adj& adj, int from, int to) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> q;
  dist[from] = 0;
  q.push(from);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    if (v == to) return dist[v];
    for (int w : adj[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return -1;
}

inline int CostGraphic(const Graph& g, const std::vector<Vertex>& order) {
  const Adj adj = AdjacencyOf(g);
  int cost = 0;
  for (size_t i = 0; i < order.size(); ++i) {
    const int a = order[i];
    const int b = order[(i + 1) % order.size()];
    cost += Adjacent(adj, a, b) ? 1 : Hops(adj, a, b);
  }
  return cost;
}

inline bool IsPermutation(const std::vector<Vertex>& order, int n) {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (Vertex v : order) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

// All spanning paths from -> to, by plain depth-first search.
inline long CountSpanningPaths(const Graph& g, int from, int to) {
  const Adj adj = AdjacencyOf(g);
  const int n = g.num_vertices();
  std::vector<char> used(n, 0);
  long count = 0;
  std::function<void(int, int)> dfs = [&](int v, int depth) {
    if (depth == n) {
      count += v == to;
      return;
    }
    if (v == to) return;
    for (int w : adj[v]) {
      if (!used[w]) {
        used[w] = 1;
        dfs(w, depth + 1);
        used[w] = 0;
      }
    }
  };
  used[from] = 1;
  dfs(from, 1);
  return count;
}

// Unsatisfied three-variable equations, evaluated directly.
inline int Unsat3(const gapforge::LinSystem& s, const std::vector<std::uint8_t>& bits) {
  int bad = 0;
  for (const gapforge::Equation& eq : s.equations) {
    if (eq.vars.size() != 3) continue;
    int sum = 0;
    for (size_t i = 0; i < 3; ++i) sum ^= bits[eq.vars[i]] ^ eq.neg[i];
    bad += sum != eq.rhs;
  }
  return bad;
}

inline std::vector<std::uint8_t> WheelConstant(const gapforge::HybridInstance& h, const std::vector<std::uint8_t>& wb) {
  std::vector<std::uint8_t> bits(h.system.num_vars, 0);
  for (int w = 0; w < h.num_wheels(); ++w) {
    for (int v = 1; v <= h.wheels[w].size(); ++v) bits[h.VarOf(w, v)] = wb[w];
  }
  return bits;
}

// Cut condition over every non-empty proper subset of a wheel on
// 1..size with the given extra edges; contacts are the multiples of 7.
inline bool AmplifierHolds(int size, const std::vector<std::pair<int, int>>& matching) {
  std::vector<std::pair<int, int>> edges = matching;
  for (int v = 1; v <= size; ++v) edges.emplace_back(v, v % size + 1);
  const int contacts = size / 7;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << size); ++mask) {
    auto in = [&](int v) { return (mask >> (v - 1)) & 1; };
    int cut = 0;
    for (auto [a, b] : edges) cut += in(a) != in(b);
    int inside = 0;
    for (int c = 7; c <= size; c += 7) inside += static_cast<int>(in(c));
    if (cut < std::min(inside, contacts - inside)) return false;
  }
  return true;
}

// Optimal tour cost over all cyclic orders, from a distance function.
template <class Dist>
int SweepOptimum(int n, Dist dist) {
  if (n <= 1) return 0;
  std::vector<int> perm(n - 1);
  for (int i = 0; i < n - 1; ++i) perm[i] = i + 1;
  int best = 1 << 30;
  do {
    int c = dist(0, perm.front()) + dist(perm.back(), 0);
    for (int i = 0; i + 1 < n - 1; ++i) c += dist(perm[i], perm[i + 1]);
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline int Sweep12(const Graph& g) {
  const Adj adj = AdjacencyOf(g);
  return SweepOptimum(g.num_vertices(), [&](int a, int b) { return Adjacent(adj, a, b) ? 1 : 2; });
}

inline int SweepGraphic(const Graph& g) {
  const Adj adj = AdjacencyOf(g);
  return SweepOptimum(g.num_vertices(), [&](int a, int b) { return Hops(adj, a, b); });
}

}  // namespace local

#endif  // GAPFORGE_TESTS_LOCAL_ORACLES_HPP_
