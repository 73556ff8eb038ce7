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

#include "gapforge/oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "gapforge/error.hpp"

namespace gapforge {

namespace {

void ReadEnv(const char* name, auto& field) {
  if (const char* text = std::getenv(name)) {
    try {
      field = static_cast<std::remove_reference_t<decltype(field)>>(std::stoull(text));
    } catch (const std::exception&) {
      throw ForgeError(ErrorKind::kInvalidParameter, std::string(name) + " is not a number");
    }
  }
}

void Refuse(const std::string& what, int n, int limit) {
  throw ForgeError(ErrorKind::kRefuseExhaustive, what + ": " + std::to_string(n) +
                                                     " vertices exceeds budget " +
                                                     std::to_string(limit));
}

class PathEnumerator {
 public:
  PathEnumerator(const Graph& g, Vertex to, std::uint64_t max_nodes)
      : g_(g), to_(to), max_nodes_(max_nodes), on_path_(g.num_vertices(), 0) {}

  std::vector<Path> Run(Vertex from) {
    Extend(from);
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  void Extend(Vertex v) {
    if (++nodes_ > max_nodes_) {
      throw ForgeError(ErrorKind::kRefuseExhaustive, "path enumeration exceeded node budget");
    }
    path_.push_back(v);
    on_path_[v] = 1;
    const int n = g_.num_vertices();
    if (static_cast<int>(path_.size()) == n) {
      if (v == to_) out_.push_back(path_);
    } else if (v != to_) {
      for (Vertex w : g_.Neighbors(v)) {
        if (!on_path_[w] && (w != to_ || static_cast<int>(path_.size()) == n - 1)) Extend(w);
      }
    }
    on_path_[v] = 0;
    path_.pop_back();
  }

  const Graph& g_;
  Vertex to_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  std::vector<char> on_path_;
  Path path_;
  std::vector<Path> out_;
};

}  // namespace

EnumerationBudget EnumerationBudget::FromEnvironment() {
  EnumerationBudget b;
  ReadEnv("FORGE_BUDGET_PATH", b.path_vertices);
  ReadEnv("FORGE_BUDGET_TSP", b.tsp_vertices);
  ReadEnv("FORGE_BUDGET_SUBSET", b.subset_vertices);
  ReadEnv("FORGE_BUDGET_PERM", b.permutation_vertices);
  ReadEnv("FORGE_BUDGET_NODES", b.max_nodes);
  return b;
}

std::vector<Path> EnumSpanningPaths(const Graph& g, Vertex from, Vertex to,
                                    const EnumerationBudget& budget) {
  const int n = g.num_vertices();
  if (n > budget.path_vertices) Refuse("path enumeration", n, budget.path_vertices);
  if (from < 0 || to < 0 || from >= n || to >= n) {
    throw ForgeError(ErrorKind::kInvalidInput, "path endpoints out of range");
  }
  if (from == to) return n == 1 ? std::vector<Path>{{from}} : std::vector<Path>{};
  return PathEnumerator(g, to, budget.max_nodes).Run(from);
}

Tsp12Solution ExactTsp12(const Graph& g, const EnumerationBudget& budget) {
  const int n = g.num_vertices();
  if (n > budget.tsp_vertices) Refuse("exact (1,2)-TSP", n, budget.tsp_vertices);
  if (n == 0) return {};
  if (n == 1) return {0, Tour{{0}}};
  auto w = [&](Vertex a, Vertex b) { return g.HasEdge(a, b) ? 1 : 2; };
  // dp over subsets of {1..n-1}; the tour starts and ends at vertex 0.
  const int m = n - 1;
  const std::size_t subsets = std::size_t{1} << m;
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  std::vector<int> dp(subsets * m, kInf);
  std::vector<std::int8_t> parent(subsets * m, -1);
  for (int j = 0; j < m; ++j) dp[(std::size_t{1} << j) * m + j] = w(0, j + 1);
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    for (int j = 0; j < m; ++j) {
      if (!(mask >> j & 1)) continue;
      const int cur = dp[mask * m + j];
      if (cur >= kInf) continue;
      for (int k = 0; k < m; ++k) {
        if (mask >> k & 1) continue;
        const std::size_t next = mask | (std::size_t{1} << k);
        const int cand = cur + w(j + 1, k + 1);
        if (cand < dp[next * m + k]) {
          dp[next * m + k] = cand;
          parent[next * m + k] = static_cast<std::int8_t>(j);
        }
      }
    }
  }
  const std::size_t full = subsets - 1;
  int best = kInf;
  int last = -1;
  for (int j = 0; j < m; ++j) {
    const int cand = dp[full * m + j] + w(j + 1, 0);
    if (cand < best) {
      best = cand;
      last = j;
    }
  }
  Tour t;
  std::size_t mask = full;
  for (int j = last; j >= 0;) {
    t.order.push_back(j + 1);
    const int p = parent[mask * m + j];
    mask &= ~(std::size_t{1} << j);
    j = p;
  }
  t.order.push_back(0);
  std::reverse(t.order.begin(), t.order.end());
  return {best, t};
}

int ExactPathCost(const Graph& g, Vertex from, Vertex to, bool hop_metric,
                  const EnumerationBudget& budget) {
  const int n = g.num_vertices();
  if (n > budget.tsp_vertices + 2) Refuse("exact path cost", n, budget.tsp_vertices + 2);
  if (from == to) {
    throw ForgeError(ErrorKind::kInvalidInput, "path endpoints must differ");
  }
  DistanceMatrix metric;
  if (hop_metric) metric = MetricClosure(g);
  auto w = [&](Vertex a, Vertex b) {
    return hop_metric ? metric(a, b) : (g.HasEdge(a, b) ? 1 : 2);
  };
  // dp[mask][v]: cheapest path from `from` through mask ending at v, where
  // mask ranges over the inner vertices only.
  std::vector<Vertex> inner;
  for (Vertex v = 0; v < n; ++v) {
    if (v != from && v != to) inner.push_back(v);
  }
  const int m = static_cast<int>(inner.size());
  if (m == 0) return w(from, to);
  const std::size_t subsets = std::size_t{1} << m;
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  std::vector<int> dp(subsets * m, kInf);
  for (int j = 0; j < m; ++j) dp[(std::size_t{1} << j) * m + j] = w(from, inner[j]);
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    for (int j = 0; j < m; ++j) {
      const int cur = dp[mask * m + j];
      if (!(mask >> j & 1) || cur >= kInf) continue;
      for (int k = 0; k < m; ++k) {
        if (mask >> k & 1) continue;
        const std::size_t next = mask | (std::size_t{1} << k);
        dp[next * m + k] = std::min(dp[next * m + k], cur + w(inner[j], inner[k]));
      }
    }
  }
  int best = kInf;
  for (int j = 0; j < m; ++j) best = std::min(best, dp[(subsets - 1) * m + j] + w(inner[j], to));
  return best;
}

namespace {

class EulerSearch {
 public:
  EulerSearch(const Graph& g, std::uint64_t max_nodes)
      : n_(g.num_vertices()), edges_(g.Edges()), max_nodes_(max_nodes), degree_(n_, 0),
        remaining_(n_, 0), mult_(edges_.size(), 0) {
    for (const Edge& e : edges_) {
      ++remaining_[e.u];
      ++remaining_[e.v];
    }
    best_ = 2 * (n_ - 1);  // doubled spanning tree
  }

  int Run() {
    Branch(0, 0);
    return best_;
  }

 private:
  int LowerBound(int used) const {
    int need = 0;
    for (int v = 0; v < n_; ++v) {
      if (degree_[v] == 0) need += 2;
      else if (degree_[v] % 2) need += 1;
    }
    return used + (need + 1) / 2;
  }

  bool Connected() const {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int components = n_;
    for (size_t i = 0; i < edges_.size(); ++i) {
      if (!mult_[i]) continue;
      const int a = find(edges_[i].u);
      const int b = find(edges_[i].v);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    return components == 1;
  }

  void Branch(size_t i, int used) {
    if (++nodes_ > max_nodes_) {
      throw ForgeError(ErrorKind::kRefuseExhaustive, "multigraph search exceeded node budget");
    }
    if (LowerBound(used) >= best_) return;
    if (i == edges_.size()) {
      if (Connected()) best_ = used;
      return;
    }
    const Edge e = edges_[i];
    --remaining_[e.u];
    --remaining_[e.v];
    for (int m = 2; m >= 0; --m) {
      degree_[e.u] += m;
      degree_[e.v] += m;
      mult_[i] = m;
      // A vertex with no undecided edges left must already be even and used.
      const bool ok = Settled(e.u) && Settled(e.v);
      if (ok) Branch(i + 1, used + m);
      degree_[e.u] -= m;
      degree_[e.v] -= m;
    }
    mult_[i] = 0;
    ++remaining_[e.u];
    ++remaining_[e.v];
  }

  bool Settled(Vertex v) const {
    return remaining_[v] > 0 || (degree_[v] > 0 && degree_[v] % 2 == 0);
  }

  int n_;
  std::vector<Edge> edges_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  std::vector<int> degree_;
  std::vector<int> remaining_;
  std::vector<int> mult_;
  int best_;
};

template <typename CostFn>
Tsp12Solution SweepPermutations(int n, CostFn cost) {
  Tsp12Solution best{std::numeric_limits<int>::max(), {}};
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  do {
    const int c = cost(Tour{order});
    if (c < best.cost) best = {c, Tour{order}};
  } while (n > 1 && std::next_permutation(order.begin() + 1, order.end()));
  return best;
}

}  // namespace

int ExactGraphicTsp(const Graph& g, const EnumerationBudget& budget) {
  const int n = g.num_vertices();
  if (n > budget.tsp_vertices) Refuse("exact graphic TSP", n, budget.tsp_vertices);
  if (!g.IsConnected()) throw ForgeError(ErrorKind::kNoMetric, "graph is disconnected");
  if (n <= 1) return 0;
  return EulerSearch(g, budget.max_nodes).Run();
}

Tsp12Solution PermutationSweep12(const Graph& g, const EnumerationBudget& budget) {
  const int n = g.num_vertices();
  if (n > budget.permutation_vertices) Refuse("permutation sweep", n, budget.permutation_vertices);
  if (n == 0) return {};
  return SweepPermutations(n, [&](const Tour& t) { return TourCost12(g, t).cost; });
}

Tsp12Solution PermutationSweepGraphic(const Graph& g, const EnumerationBudget& budget) {
  const int n = g.num_vertices();
  if (n > budget.permutation_vertices) Refuse("permutation sweep", n, budget.permutation_vertices);
  if (n == 0) return {};
  const DistanceMatrix metric = MetricClosure(g);
  return SweepPermutations(n, [&](const Tour& t) { return TourCostGraphic(metric, t); });
}

GraphicCrossCheck CrossCheckGraphic(const Graph& g, const EnumerationBudget& budget) {
  GraphicCrossCheck out;
  out.multigraph_cost = ExactGraphicTsp(g, budget);
  const Tsp12Solution sweep = PermutationSweepGraphic(g, budget);
  out.permutation_cost = sweep.cost;
  out.witness = sweep.tour;
  out.agree = out.multigraph_cost == out.permutation_cost;
  return out;
}

AmplifierVerdict ExhaustiveSubsets(const WheelAmplifier& w, const EnumerationBudget& budget) {
  w.Validate();
  const int n = w.size();
  if (n > budget.subset_vertices) Refuse("subset enumeration", n, budget.subset_vertices);
  std::vector<std::pair<int, int>> edges = w.CycleEdges();
  edges.insert(edges.end(), w.matching.begin(), w.matching.end());
  const std::vector<int> contacts = w.Contacts();
  AmplifierVerdict verdict;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    ++verdict.subsets_checked;
    int cut = 0;
    for (auto [a, b] : edges) cut += ((mask >> (a - 1)) & 1) != ((mask >> (b - 1)) & 1);
    int inside = 0;
    for (int c : contacts) inside += (mask >> (c - 1)) & 1;
    if (cut < std::min(inside, w.d - inside)) {
      verdict.holds = false;
      for (int v = 1; v <= n; ++v) {
        if (mask >> (v - 1) & 1) verdict.witness.push_back(v);
      }
      return verdict;
    }
  }
  return verdict;
}

std::vector<Graph> ConnectedGraphCensus(int max_n) {
  if (max_n < 1 || max_n > 6) {
    throw ForgeError(ErrorKind::kInvalidParameter, "census supports 1..6 vertices");
  }
  std::vector<Graph> out;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    }
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    // Pair index lookup for relabelled edges.
    std::vector<std::vector<int>> index(n, std::vector<int>(n, -1));
    for (size_t i = 0; i < pairs.size(); ++i) {
      index[pairs[i].first][pairs[i].second] = index[pairs[i].second][pairs[i].first] =
          static_cast<int>(i);
    }
    std::set<std::uint32_t> seen;
    const std::uint32_t limit = std::uint32_t{1} << pairs.size();
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
      Graph g(n);
      for (size_t i = 0; i < pairs.size(); ++i) {
        if (mask >> i & 1) g.AddEdge(pairs[i].first, pairs[i].second);
      }
      if (!g.IsConnected()) continue;
      std::uint32_t canon = mask;
      for (const auto& perm : perms) {
        std::uint32_t image = 0;
        for (size_t i = 0; i < pairs.size(); ++i) {
          if (mask >> i & 1) image |= std::uint32_t{1} << index[perm[pairs[i].first]][perm[pairs[i].second]];
        }
        canon = std::min(canon, image);
      }
      if (seen.insert(canon).second) out.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace gapforge
