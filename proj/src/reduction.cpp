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

#include "gapforge/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "gapforge/error.hpp"
#include "gapforge/gadgets.hpp"
#include "gapforge/graph_io.hpp"

namespace gapforge {

std::string_view ToString(Variant v) {
  switch (v) {
    case Variant::kMax5: return "max5";
    case Variant::kSubcubic: return "subcubic";
    case Variant::kCubic: return "cubic";
    case Variant::kGraphicSubcubic: return "gr-subcubic";
    case Variant::kGraphicCubic: return "gr-cubic";
  }
  return "subcubic";
}

Variant VariantFromString(std::string_view text) {
  if (text == "max5") return Variant::kMax5;
  if (text == "subcubic") return Variant::kSubcubic;
  if (text == "cubic") return Variant::kCubic;
  if (text == "gr-subcubic" || text == "graphic_subcubic") return Variant::kGraphicSubcubic;
  if (text == "gr-cubic" || text == "graphic_cubic") return Variant::kGraphicCubic;
  throw ForgeError(ErrorKind::kInvalidParameter, "unknown variant '" + std::string(text) + "'");
}

std::vector<Variant> AllVariants() {
  return {Variant::kMax5, Variant::kSubcubic, Variant::kCubic, Variant::kGraphicSubcubic,
          Variant::kGraphicCubic};
}

bool IsGraphic(Variant v) { return v == Variant::kGraphicSubcubic || v == Variant::kGraphicCubic; }
bool IsCubic(Variant v) { return v == Variant::kCubic || v == Variant::kGraphicCubic; }

Variant CoreVariant(Variant v) {
  if (v == Variant::kCubic) return Variant::kSubcubic;
  if (v == Variant::kGraphicCubic) return Variant::kGraphicSubcubic;
  return v;
}

namespace {

// Per-equation vertex constant (c/2 in c*nu) and border multiplier.
std::pair<int, int> LedgerConstants(Variant v) {
  switch (v) {
    case Variant::kMax5: return {267, 3};
    case Variant::kSubcubic: return {336, 3};
    case Variant::kCubic: return {570, 6};
    case Variant::kGraphicSubcubic: return {342, 3};
    case Variant::kGraphicCubic: return {576, 6};
  }
  return {0, 0};
}

}  // namespace

int LedgerBase(Variant v, int m3, int n_wheels) {
  const auto [per_eq, border] = LedgerConstants(v);
  return per_eq * m3 + border * (n_wheels + 1) - 1;
}

// The closed form expands n+1 border vertices; the outer loop also ends in
// a degree-2 border vertex, which the cubic variants must expand as well.
int LedgerCorrection(Variant v) { return IsCubic(v) ? 3 : 0; }

CostLedger BuiltInstance::Ledger(int unsatisfied) const {
  return {LedgerBase(variant, num_three_var(), num_wheels()), LedgerCorrection(variant), unsatisfied};
}

namespace {

enum BlueprintIndex { kBpParity = 0, kBpModified, kBp2in3, kBpEq, kBpEqGraphic, kBp3Xor };

const std::vector<GadgetBlueprint>& Catalog() {
  static const std::vector<GadgetBlueprint> catalog = GadgetCatalog();
  return catalog;
}

// A literal's module is crossed by the wheel (inner loop) when the wheel
// bit equals neg ^ flip. The flips fold the right-hand side into the
// outer gadgets' parity: the three-variable gadget admits a spanning route
// for an odd number of present modules, the clause chain for an even
// number of true literals.
std::array<int, 3> TriggerFlip(Variant core_variant, int rhs) {
  if (core_variant == Variant::kMax5) return rhs == 0 ? std::array{1, 1, 1} : std::array{0, 0, 0};
  return rhs == 0 ? std::array{0, 0, 0} : std::array{1, 0, 0};
}

class CoreBuilder {
 public:
  explicit CoreBuilder(BuiltInstance& inst) : inst_(inst), g_(inst.core) {}

  void Build() {
    const HybridInstance& h = inst_.hybrid;
    const int n = h.num_wheels();
    inst_.b1.assign(n + 2, -1);
    inst_.b2.assign(n + 2, -1);
    inst_.b3.assign(n + 2, -1);
    for (int l = 1; l <= n + 1; ++l) {
      inst_.b1[l] = g_.AddVertex("border/b1_" + std::to_string(l));
      inst_.b2[l] = g_.AddVertex("border/b2_" + std::to_string(l));
      g_.AddEdge(inst_.b1[l], inst_.b2[l]);
      if (l <= n) {
        inst_.b3[l] = g_.AddVertex("border/b3_" + std::to_string(l));
        g_.AddEdge(inst_.b2[l], inst_.b3[l]);
      }
    }
    BuildWheelGadgets();
    BuildContactGadgets();
    for (int w = 0; w < n; ++w) WireWheel(w);
    if (inst_.variant == Variant::kMax5) {
      BuildOuterMax5();
    } else {
      BuildOuterClauses();
    }
  }

 private:
  int PlaceGadget(GadgetRole role, const std::string& prefix) {
    const GadgetBlueprint& parity = Catalog()[kBpParity];
    PlacedGadget pg;
    pg.role = role;
    for (Vertex v = 0; v < parity.graph.num_vertices(); ++v) {
      pg.ids[v] = g_.AddVertex(prefix + "/" + parity.graph.Label(v));
    }
    for (const Edge& e : parity.graph.Edges()) g_.AddEdge(pg.ids[e.u], pg.ids[e.v]);
    inst_.gadgets.push_back(pg);
    return static_cast<int>(inst_.gadgets.size()) - 1;
  }

  void BuildWheelGadgets() {
    const HybridInstance& h = inst_.hybrid;
    inst_.wheel_gadgets.assign(h.num_wheels(), {});
    inst_.links.assign(h.num_wheels(), {});
    for (int w = 0; w < h.num_wheels(); ++w) {
      const WheelAmplifier& wheel = h.wheels[w];
      const std::string wp = "w" + std::to_string(w + 1);
      inst_.links[w].assign(wheel.size(), {});
      for (int i = 1; i <= wheel.size(); ++i) {
        const int gi = PlaceGadget(GadgetRole::kWheel, wp + "/P" + std::to_string(i));
        inst_.gadgets[gi].wheel = w;
        inst_.gadgets[gi].vertex = i;
        inst_.wheel_gadgets[w].push_back(gi);
      }
      // One gadget per matching edge; its side 1 sits on the smaller
      // endpoint's link (crossed when that bit is 0), side 0 on the other.
      for (auto [i, j] : wheel.matching) {
        const int gi = PlaceGadget(GadgetRole::kMatching,
                                   wp + "/M" + std::to_string(i) + "-" + std::to_string(j));
        inst_.gadgets[gi].wheel = w;
        inst_.gadgets[gi].vertex = i;
        inst_.gadgets[gi].partner = j;
        inst_.links[w][i - 1] = {gi, 0, 1};
        inst_.links[w][j - 1] = {gi, 1, 0};
      }
    }
  }

  void BuildContactGadgets() {
    const HybridInstance& h = inst_.hybrid;
    const Variant core = CoreVariant(inst_.variant);
    inst_.contact_gadgets.assign(h.num_three_var(), {-1, -1, -1});
    inst_.flips.assign(h.num_three_var(), {0, 0, 0});
    for (int e = 0; e < h.num_three_var(); ++e) {
      const Equation& eq = h.system.equations[h.three_var[e]];
      inst_.flips[e] = TriggerFlip(core, eq.rhs);
      for (int p = 0; p < 3; ++p) {
        const ContactRef& c = h.contacts[e][p];
        const int gi = PlaceGadget(GadgetRole::kContact, "e" + std::to_string(e + 1) + "/lit" +
                                                             std::to_string(p + 1));
        PlacedGadget& pg = inst_.gadgets[gi];
        pg.wheel = c.wheel;
        pg.vertex = 7 * c.contact_index;
        pg.equation = e;
        pg.position = p;
        inst_.contact_gadgets[e][p] = gi;
        inst_.links[c.wheel][7 * c.contact_index - 1] = {gi, (eq.neg[p] ^ inst_.flips[e][p]) & 1, 1};
      }
    }
  }

  // Chain P_2 -> P_3 -> ... -> P_alpha -> P_1. Link i joins P_i.r_t to
  // X_t(i); the module on link i replaces the edge for t = trigger.
  void WireWheel(int w) {
    const int l = w + 1;
    const int alpha = inst_.hybrid.wheels[w].size();
    const auto& gw = inst_.wheel_gadgets[w];
    auto P = [&](int i) -> const PlacedGadget& { return inst_.gadgets[gw[i - 1]]; };
    g_.AddEdge(inst_.b3[l], P(2).Port(0, false));
    g_.AddEdge(inst_.b1[l + 1], P(2).Port(1, false));
    for (int i = 1; i <= alpha; ++i) {
      const LinkModule& lm = inst_.links[w][i - 1];
      if (lm.gadget < 0) throw ForgeError(ErrorKind::kBuildError, "wheel vertex without a module");
      for (int t = 0; t < 2; ++t) {
        Vertex x;
        if (i == 1) {
          x = t == 0 ? inst_.b1[l + 1] : inst_.b3[l];
        } else {
          x = P(i == alpha ? 1 : i + 1).Port(t, false);
        }
        const Vertex u = P(i).Port(t, true);
        if (lm.trigger == t) {
          const PlacedGadget& m = inst_.gadgets[lm.gadget];
          g_.AddEdge(u, m.Port(lm.side, true));
          g_.AddEdge(m.Port(lm.side, false), x);
        } else {
          g_.AddEdge(u, x);
        }
      }
    }
  }

  // Creates the non-stub vertices of a blueprint (reusing `fixed` ones)
  // and its edges, with module stubs mapped onto placed gadget ports.
  PlacedPiece Instantiate(int bp_index, const std::string& prefix, const std::vector<int>& slots,
                          const std::map<std::string, Vertex>& fixed) {
    const GadgetBlueprint& bp = Catalog()[bp_index];
    PlacedPiece piece;
    piece.blueprint = bp_index;
    piece.slot_gadget = slots;
    piece.core_of.assign(bp.graph.num_vertices(), -1);
    std::vector<int> stub_slot(bp.graph.num_vertices(), -1);
    std::vector<char> stub_right(bp.graph.num_vertices(), 0);
    for (size_t k = 0; k < bp.modules.size(); ++k) {
      stub_slot[bp.modules[k].a] = static_cast<int>(k);
      stub_slot[bp.modules[k].b] = static_cast<int>(k);
      stub_right[bp.modules[k].b] = 1;
    }
    for (Vertex v = 0; v < bp.graph.num_vertices(); ++v) {
      if (stub_slot[v] >= 0) continue;
      const auto it = fixed.find(bp.graph.Label(v));
      piece.core_of[v] = it != fixed.end() ? it->second : g_.AddVertex(prefix + "/" + bp.graph.Label(v));
    }
    auto map = [&](Vertex v) {
      if (stub_slot[v] < 0) return piece.core_of[v];
      const int k = stub_slot[v];
      return inst_.gadgets[slots[k]].Port(bp.modules[k].side, stub_right[v]);
    };
    for (const Edge& e : bp.graph.Edges()) {
      if (stub_slot[e.u] >= 0 && stub_slot[e.u] == stub_slot[e.v]) continue;
      g_.AddEdge(map(e.u), map(e.v));
    }
    return piece;
  }

  void BuildOuterMax5() {
    const HybridInstance& h = inst_.hybrid;
    Vertex s = g_.AddVertex("e1/xor/s");
    g_.AddEdge(inst_.b2[h.num_wheels() + 1], s);
    for (int e = 0; e < h.num_three_var(); ++e) {
      const bool last = e + 1 == h.num_three_var();
      const Vertex next = last ? inst_.b1[1] : g_.AddVertex("e" + std::to_string(e + 2) + "/xor/s");
      const auto& cg = inst_.contact_gadgets[e];
      EquationPieces ep;
      ep.pieces.push_back(Instantiate(kBp3Xor, "e" + std::to_string(e + 1) + "/xor",
                                      {cg[0], cg[1], cg[2]}, {{"s", s}, {"s_next", next}}));
      inst_.equations.push_back(ep);
      s = next;
    }
  }

  void BuildOuterClauses() {
    const HybridInstance& h = inst_.hybrid;
    const int eq_bp = IsGraphic(inst_.variant) ? kBpEqGraphic : kBpEq;
    Vertex prev = inst_.b2[h.num_wheels() + 1];
    static const char* kCopyNames[6] = {"a1_1", "a1_2", "a1_3", "a2_1", "a2_2", "a2_3"};
    for (int e = 0; e < h.num_three_var(); ++e) {
      const std::string ep_name = "e" + std::to_string(e + 1);
      EquationPieces ep;
      for (int c = 0; c < 6; ++c) {
        const int gi = PlaceGadget(GadgetRole::kCopy, ep_name + "/" + kCopyNames[c]);
        inst_.gadgets[gi].equation = e;
        inst_.gadgets[gi].position = c;
        ep.copies.push_back(gi);
      }
      const auto& cg = inst_.contact_gadgets[e];
      const auto& cp = ep.copies;
      // Clauses (x, a1_1, a1_2), (y, a2_2, a1_3), (z, a2_1, a2_3).
      const std::vector<std::vector<int>> clause_slots = {
          {cg[0], cp[0], cp[1]}, {cg[1], cp[4], cp[2]}, {cg[2], cp[3], cp[5]}};
      for (int c = 0; c < 3; ++c) {
        PlacedPiece piece =
            Instantiate(kBp2in3, ep_name + "/or" + std::to_string(c + 1), clause_slots[c], {});
        g_.AddEdge(prev, piece.core_of[Catalog()[kBp2in3].Id("s")]);
        prev = piece.core_of[Catalog()[kBp2in3].Id("e")];
        ep.pieces.push_back(std::move(piece));
      }
      for (int i = 0; i < 3; ++i) {
        PlacedPiece piece =
            Instantiate(eq_bp, ep_name + "/eq" + std::to_string(i + 1), {cp[i], cp[i + 3]}, {});
        g_.AddEdge(prev, piece.core_of[Catalog()[eq_bp].Id("s")]);
        prev = piece.core_of[Catalog()[eq_bp].Id("e")];
        ep.pieces.push_back(std::move(piece));
      }
      inst_.equations.push_back(std::move(ep));
    }
    g_.AddEdge(prev, inst_.b1[1]);
  }

  BuiltInstance& inst_;
  Graph& g_;
};

void ExpandDegreeTwo(BuiltInstance& inst) {
  const Graph& core = inst.core;
  const int n = core.num_vertices();
  inst.expansion_of.assign(n, -1);
  inst.graph_id.assign(n, -1);
  Graph& g = inst.graph;
  g = Graph();
  for (Vertex c = 0; c < n; ++c) {
    if (core.Degree(c) == 2) {
      Expansion ex;
      ex.core = c;
      ex.x = std::min(core.Neighbors(c)[0], core.Neighbors(c)[1]);
      ex.y = std::max(core.Neighbors(c)[0], core.Neighbors(c)[1]);
      for (int k = 0; k < 4; ++k) ex.ids[k] = g.AddVertex(core.Label(c) + "#" + std::to_string(k + 1));
      g.AddEdge(ex.ids[0], ex.ids[1]);
      g.AddEdge(ex.ids[1], ex.ids[2]);
      g.AddEdge(ex.ids[2], ex.ids[3]);
      g.AddEdge(ex.ids[0], ex.ids[2]);
      g.AddEdge(ex.ids[1], ex.ids[3]);
      inst.expansion_of[c] = static_cast<int>(inst.expansions.size());
      inst.graph_id[c] = ex.ids[0];
      inst.expansions.push_back(ex);
    } else {
      inst.graph_id[c] = g.AddVertex(core.Label(c));
    }
  }
  auto attach = [&](Vertex c, Vertex nb) {
    const int k = inst.expansion_of[c];
    if (k < 0) return inst.graph_id[c];
    return nb == inst.expansions[k].x ? inst.expansions[k].ids[0] : inst.expansions[k].ids[3];
  };
  for (const Edge& e : core.Edges()) g.AddEdge(attach(e.u, e.v), attach(e.v, e.u));
}

void CheckDegrees(const BuiltInstance& inst) {
  const DegreeProfile p = GetDegreeProfile(inst.graph);
  const bool ok = IsCubic(inst.variant)          ? (p.is_regular && p.max_degree == 3)
                  : inst.variant == Variant::kMax5 ? p.max_degree <= 5
                                                   : p.max_degree <= 3;
  if (!ok) {
    throw ForgeError(ErrorKind::kBuildError, std::string(ToString(inst.variant)) +
                                                 " instance violates its degree bound (max " +
                                                 std::to_string(p.max_degree) + ")");
  }
  if (!inst.graph.IsConnected()) throw ForgeError(ErrorKind::kBuildError, "instance is disconnected");
}

}  // namespace

BuiltInstance BuildInstance(const HybridInstance& hybrid, Variant variant) {
  hybrid.Validate();
  if (hybrid.num_three_var() == 0 || hybrid.num_wheels() == 0) {
    throw ForgeError(ErrorKind::kBuildError, "hybrid instance has no three-variable equations");
  }
  for (const Equation& eq : hybrid.system.equations) {
    if (eq.vars.size() == 2 && (eq.rhs != 0 || eq.neg[0] || eq.neg[1])) {
      throw ForgeError(ErrorKind::kBuildError, "two-variable equations must read x + y = 0");
    }
  }
  BuiltInstance inst;
  inst.variant = variant;
  inst.hybrid = hybrid;
  CoreBuilder(inst).Build();
  if (IsCubic(variant)) {
    ExpandDegreeTwo(inst);
  } else {
    inst.graph = inst.core;
    inst.graph_id.resize(inst.core.num_vertices());
    std::iota(inst.graph_id.begin(), inst.graph_id.end(), 0);
    inst.expansion_of.assign(inst.core.num_vertices(), -1);
  }
  CheckDegrees(inst);
  return inst;
}

BuiltInstance CoreView(const BuiltInstance& inst) {
  BuiltInstance view = inst;
  view.variant = CoreVariant(inst.variant);
  view.graph = inst.core;
  view.expansions.clear();
  view.expansion_of.assign(inst.core.num_vertices(), -1);
  view.graph_id.resize(inst.core.num_vertices());
  std::iota(view.graph_id.begin(), view.graph_id.end(), 0);
  return view;
}

namespace {

std::vector<Vertex> GadgetWalk(const PlacedGadget& pg, int side, bool left_to_right) {
  const GadgetBlueprint& parity = Catalog()[kBpParity];
  std::vector<Vertex> out;
  for (const std::string& name : ParityTraversal(parity, side ? TraversalKind::kOne : TraversalKind::kZero)) {
    out.push_back(pg.ids[parity.Id(name)]);
  }
  if (!left_to_right) std::reverse(out.begin(), out.end());
  return out;
}

// Abstract route over blueprint vertices for a module mask: a declared
// traversal if there is one, otherwise the cheapest ordering that keeps
// each module's stubs adjacent.
const std::vector<Vertex>& PlanRoute(int bp_index, std::uint32_t mask, bool hop_metric) {
  static std::mutex mu;
  static std::map<std::tuple<int, std::uint32_t, bool>, std::vector<Vertex>> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(bp_index, mask, hop_metric);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const GadgetBlueprint& bp = Catalog()[bp_index];
  const auto& [from_name, to_name] = bp.terminals.front();
  std::vector<Vertex> route;
  for (const Traversal& t : bp.traversals) {
    if (t.mask == mask && t.from == from_name && t.to == to_name) {
      for (const std::string& n : t.sequence) route.push_back(bp.Id(n));
      break;
    }
  }
  if (route.empty()) {
    const std::vector<char> keep = bp.PresentVertices(mask);
    std::vector<Vertex> old_id;
    const Graph sub = InducedSubgraph(bp.graph, keep, &old_id);
    DistanceMatrix metric;
    if (hop_metric) metric = MetricClosure(sub);
    std::vector<Vertex> local(bp.graph.num_vertices(), -1);
    for (size_t i = 0; i < old_id.size(); ++i) local[old_id[i]] = static_cast<Vertex>(i);
    auto weight = [&](Vertex a, Vertex b) {
      return hop_metric ? metric(local[a], local[b]) : (sub.HasEdge(local[a], local[b]) ? 1 : 2);
    };
    const Vertex from = bp.Id(from_name);
    const Vertex to = bp.Id(to_name);
    // Units: single core vertices or glued stub pairs.
    std::vector<std::pair<Vertex, Vertex>> units;
    std::vector<char> is_stub(bp.graph.num_vertices(), 0);
    for (size_t k = 0; k < bp.modules.size(); ++k) {
      is_stub[bp.modules[k].a] = is_stub[bp.modules[k].b] = 1;
      if (mask >> k & 1) units.emplace_back(bp.modules[k].a, bp.modules[k].b);
    }
    for (Vertex v = 0; v < bp.graph.num_vertices(); ++v) {
      if (!is_stub[v] && v != from && v != to) units.emplace_back(v, v);
    }
    std::vector<int> perm(units.size());
    std::iota(perm.begin(), perm.end(), 0);
    int best = std::numeric_limits<int>::max();
    const int flips = 1 << units.size();
    do {
      for (int f = 0; f < flips; ++f) {
        std::vector<Vertex> seq{from};
        bool redundant = false;
        for (size_t i = 0; i < perm.size(); ++i) {
          auto [a, b] = units[perm[i]];
          const bool flip = f >> i & 1;
          if (a == b && flip) redundant = true;
          seq.push_back(flip ? b : a);
          if (a != b) seq.push_back(flip ? a : b);
        }
        if (redundant) continue;
        seq.push_back(to);
        int cost = 0;
        for (size_t i = 0; i + 1 < seq.size(); ++i) cost += weight(seq[i], seq[i + 1]);
        if (cost < best) {
          best = cost;
          route = seq;
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return cache.emplace(key, std::move(route)).first->second;
}

// Expands an abstract route into core vertices; stubs become the module
// gadget's traversal on the slot's side.
void EmitPiece(const BuiltInstance& inst, const PlacedPiece& piece, std::uint32_t mask,
               std::vector<Vertex>& out, bool drop_last) {
  const GadgetBlueprint& bp = Catalog()[piece.blueprint];
  const std::vector<Vertex>& route = PlanRoute(piece.blueprint, mask, IsGraphic(inst.variant));
  std::vector<Vertex> seq;
  for (size_t i = 0; i < route.size(); ++i) {
    const Vertex v = route[i];
    if (piece.core_of[v] >= 0) {
      seq.push_back(piece.core_of[v]);
      continue;
    }
    for (size_t k = 0; k < bp.modules.size(); ++k) {
      const ModuleSlot& m = bp.modules[k];
      if (v != m.a && v != m.b) continue;
      const auto walk = GadgetWalk(inst.gadgets[piece.slot_gadget[k]], m.side, v == m.a);
      seq.insert(seq.end(), walk.begin(), walk.end());
      ++i;  // the partner stub follows immediately
      break;
    }
  }
  if (drop_last) seq.pop_back();
  out.insert(out.end(), seq.begin(), seq.end());
}

// Copy bits a1_1..a1_3, a2_1..a2_3 (bit c of the result) so that every
// clause has exactly two present modules and as few copy pairs disagree as
// possible.
int ChooseCopies(const std::array<int, 3>& literal_present) {
  int best_mask = 0;
  int best_bad = 99;
  for (int mask = 0; mask < 64; ++mask) {
    auto a = [&](int c) { return mask >> c & 1; };
    const bool clauses_ok = literal_present[0] + a(0) + a(1) == 2 &&
                            literal_present[1] + a(4) + a(2) == 2 &&
                            literal_present[2] + a(3) + a(5) == 2;
    if (!clauses_ok) continue;
    const int bad = (a(0) != a(3)) + (a(1) != a(4)) + (a(2) != a(5));
    if (bad < best_bad) {
      best_bad = bad;
      best_mask = mask;
    }
  }
  return best_mask;
}

Tour CoreTour(const BuiltInstance& inst, const std::vector<std::uint8_t>& wheel_bits) {
  const HybridInstance& h = inst.hybrid;
  const int n = h.num_wheels();
  std::vector<Vertex> order;
  order.reserve(inst.core.num_vertices());
  for (int l = 1; l <= n; ++l) {
    order.push_back(inst.b1[l]);
    order.push_back(inst.b2[l]);
    order.push_back(inst.b3[l]);
    const int w = l - 1;
    const int bit = wheel_bits[w];
    const int alpha = h.wheels[w].size();
    std::vector<Vertex> chain;
    for (int step = 0; step < alpha; ++step) {
      const int i = step + 2 <= alpha ? step + 2 : 1;
      const auto walk = GadgetWalk(inst.gadgets[inst.wheel_gadgets[w][i - 1]], bit, true);
      chain.insert(chain.end(), walk.begin(), walk.end());
      const LinkModule& lm = inst.links[w][i - 1];
      if (lm.trigger == bit) {
        const auto mwalk = GadgetWalk(inst.gadgets[lm.gadget], lm.side, false);
        chain.insert(chain.end(), mwalk.begin(), mwalk.end());
      }
    }
    if (bit == 1) std::reverse(chain.begin(), chain.end());
    order.insert(order.end(), chain.begin(), chain.end());
  }
  order.push_back(inst.b1[n + 1]);
  order.push_back(inst.b2[n + 1]);

  for (int e = 0; e < h.num_three_var(); ++e) {
    std::array<int, 3> present{};
    for (int p = 0; p < 3; ++p) {
      const PlacedGadget& cg = inst.gadgets[inst.contact_gadgets[e][p]];
      const LinkModule& lm = inst.links[cg.wheel][cg.vertex - 1];
      present[p] = wheel_bits[cg.wheel] != lm.trigger;
    }
    const EquationPieces& ep = inst.equations[e];
    if (inst.variant == Variant::kMax5) {
      const std::uint32_t mask = present[0] | present[1] << 1 | present[2] << 2;
      EmitPiece(inst, ep.pieces[0], mask, order, true);
      continue;
    }
    const int copies = ChooseCopies(present);
    auto a = [&](int c) -> std::uint32_t { return copies >> c & 1; };
    const std::uint32_t clause_masks[3] = {
        static_cast<std::uint32_t>(present[0]) | a(0) << 1 | a(1) << 2,
        static_cast<std::uint32_t>(present[1]) | a(4) << 1 | a(2) << 2,
        static_cast<std::uint32_t>(present[2]) | a(3) << 1 | a(5) << 2};
    for (int c = 0; c < 3; ++c) EmitPiece(inst, ep.pieces[c], clause_masks[c], order, false);
    // An equality gadget hosts a copy module when that copy is false.
    for (int i = 0; i < 3; ++i) {
      const std::uint32_t mask = (1 - a(i)) | (1 - a(i + 3)) << 1;
      EmitPiece(inst, ep.pieces[3 + i], mask, order, false);
    }
  }
  return Tour{order};
}

}  // namespace

Tour ExpandTour(const BuiltInstance& inst, const Tour& core_tour) {
  if (!IsCubic(inst.variant)) return core_tour;
  ValidateTour(inst.core, core_tour);
  const int n = static_cast<int>(core_tour.order.size());
  Tour out;
  out.order.reserve(inst.graph.num_vertices());
  for (int i = 0; i < n; ++i) {
    const Vertex c = core_tour.order[i];
    const int k = inst.expansion_of[c];
    if (k < 0) {
      out.order.push_back(inst.graph_id[c]);
      continue;
    }
    const Expansion& ex = inst.expansions[k];
    const Vertex pred = core_tour.order[(i + n - 1) % n];
    const Vertex succ = core_tour.order[(i + 1) % n];
    const bool reverse = !(pred == ex.x || succ == ex.y) && (pred == ex.y || succ == ex.x);
    if (reverse) {
      out.order.insert(out.order.end(), ex.ids.rbegin(), ex.ids.rend());
    } else {
      out.order.insert(out.order.end(), ex.ids.begin(), ex.ids.end());
    }
  }
  return out;
}

TourPlan AssignToTour(const BuiltInstance& inst, const Assignment& a) {
  if (!IsConsistent(inst.hybrid, a)) {
    throw ForgeError(ErrorKind::kMustBeConsistent,
                     "assignment is not constant on every wheel; apply make_consistent first");
  }
  const Tour core = CoreTour(inst, WheelBits(inst.hybrid, a));
  TourPlan plan;
  plan.tour = ExpandTour(inst, core);
  plan.predicted = inst.Ledger(CountUnsatisfiedOfArity(inst.hybrid.system, a, 3));
  return plan;
}

int VariantCost(const BuiltInstance& inst, const Tour& t) {
  return IsGraphic(inst.variant) ? TourCostGraphic(inst.graph, t) : TourCost12(inst.graph, t).cost;
}

std::vector<Block> ParityBlocks(const BuiltInstance& inst) {
  const GadgetBlueprint& parity = Catalog()[kBpParity];
  std::vector<Block> blocks;
  blocks.reserve(inst.gadgets.size());
  for (const PlacedGadget& pg : inst.gadgets) {
    Block b;
    b.vertices.assign(pg.ids.begin(), pg.ids.end());
    for (int side = 0; side < 2; ++side) {
      std::vector<Vertex> route;
      for (const std::string& name : ParityTraversal(parity, side ? TraversalKind::kOne : TraversalKind::kZero)) {
        route.push_back(pg.ids[parity.Id(name)]);
      }
      b.routes.push_back(std::move(route));
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

namespace {

// Kind of each wheel parity gadget in a core cover: 0/1, or -1.
std::vector<std::vector<int>> ReadWheelKinds(const BuiltInstance& inst, const PathCover& cover,
                                             const std::vector<Block>& blocks) {
  std::vector<char> scratch(inst.core.num_vertices(), 0);
  std::vector<std::vector<int>> kinds(inst.num_wheels());
  for (int w = 0; w < inst.num_wheels(); ++w) {
    for (int gi : inst.wheel_gadgets[w]) kinds[w].push_back(MatchingRoute(cover, blocks[gi], scratch));
  }
  return kinds;
}

Assignment KindsToAssignment(const BuiltInstance& inst, const std::vector<std::vector<int>>& kinds) {
  Assignment phi;
  phi.bits.assign(inst.hybrid.system.num_vars, 0);
  for (int w = 0; w < inst.num_wheels(); ++w) {
    for (size_t i = 0; i < kinds[w].size(); ++i) {
      phi.bits[inst.hybrid.VarOf(w, static_cast<int>(i) + 1)] = kinds[w][i] == 1 ? 1 : 0;
    }
  }
  return phi;
}

// Core-level repair shared by MakeTourConsistent and TourToAssignment.
Tour RepairCore(const BuiltInstance& inst, const Tour& core_tour, ConsistencyReport* report) {
  const std::vector<Block> blocks = ParityBlocks(inst);
  PathCover cover(inst.core, core_tour);
  ConsistencyReport local;
  local.stats = RepairBlocks(cover, inst.core, blocks);
  Tour out = cover.ToTour(core_tour);
  if (local.stats.remaining > 0) {
    // Rebuild from the assignment the repaired part encodes; taken only if
    // it is no more expensive.
    const Assignment a = MakeConsistent(inst.hybrid, KindsToAssignment(inst, ReadWheelKinds(inst, cover, blocks)));
    const Tour rebuilt = CoreTour(inst, WheelBits(inst.hybrid, a));
    if (TourCost12(inst.core, rebuilt).cost <= TourCost12(inst.core, out).cost) {
      out = rebuilt;
      local.fallback_used = true;
    }
  }
  local.consistent = local.fallback_used || local.stats.remaining == 0;
  if (report) *report = local;
  return out;
}

}  // namespace

Tour MakeTourConsistent(const BuiltInstance& inst, const Tour& t, ConsistencyReport* report) {
  if (IsCubic(inst.variant)) {
    throw ForgeError(ErrorKind::kInvalidParameter, "cubic tours go through contract_paths first");
  }
  return RepairCore(inst, t, report);
}

bool IsTourConsistent(const BuiltInstance& inst, const Tour& t) {
  const PathCover cover(inst.core, t);
  std::vector<char> scratch(inst.core.num_vertices(), 0);
  for (const Block& b : ParityBlocks(inst)) {
    if (MatchingRoute(cover, b, scratch) < 0) return false;
  }
  return true;
}

Tour ContractPaths(const BuiltInstance& inst, const Tour& t, RepairStats* stats) {
  if (!IsCubic(inst.variant)) {
    throw ForgeError(ErrorKind::kInvalidParameter, "contract_paths needs a cubic variant");
  }
  ValidateTour(inst.graph, t);
  std::vector<Block> blocks;
  for (const Expansion& ex : inst.expansions) {
    const auto& v = ex.ids;
    blocks.push_back({{v[0], v[1], v[2], v[3]}, {{v[0], v[1], v[2], v[3]}, {v[0], v[2], v[1], v[3]}}});
  }
  PathCover cover(inst.graph, t);
  const RepairStats s = RepairBlocks(cover, inst.graph, blocks);
  if (stats) *stats = s;
  const Tour normal = cover.ToTour(t);

  std::vector<Vertex> core_of(inst.graph.num_vertices(), -1);
  for (Vertex c = 0; c < inst.core.num_vertices(); ++c) {
    const int k = inst.expansion_of[c];
    if (k < 0) {
      core_of[inst.graph_id[c]] = c;
    } else {
      for (Vertex v : inst.expansions[k].ids) core_of[v] = c;
    }
  }
  // Start where a new core vertex begins so no block wraps around.
  const int n = static_cast<int>(normal.order.size());
  int start = 0;
  for (int i = 0; i < n; ++i) {
    if (core_of[normal.order[i]] != core_of[normal.order[(i + n - 1) % n]]) {
      start = i;
      break;
    }
  }
  Tour out;
  std::vector<char> seen(inst.core.num_vertices(), 0);
  for (int step = 0; step < n; ++step) {
    const Vertex c = core_of[normal.order[(start + step) % n]];
    if (!seen[c]) {
      seen[c] = 1;
      out.order.push_back(c);
    }
  }
  return out;
}

Extraction TourToAssignment(const BuiltInstance& inst, const Tour& t) {
  Extraction ex;
  ex.tour_cost = VariantCost(inst, t);
  // Graphic tours are read with (1,2) weights, which never cost more.
  Tour core_tour = IsCubic(inst.variant) ? ContractPaths(inst, t) : t;
  ConsistencyReport report;
  const Tour repaired = RepairCore(inst, core_tour, &report);
  ex.repair_complete = report.consistent;
  ex.repaired_cost = TourCost12(inst.core, repaired).cost + 3 * static_cast<int>(inst.expansions.size());
  const std::vector<Block> blocks = ParityBlocks(inst);
  const PathCover cover(inst.core, repaired);
  ex.assignment = MakeConsistent(inst.hybrid, KindsToAssignment(inst, ReadWheelKinds(inst, cover, blocks)));
  const CostLedger ledger = inst.Ledger();
  const int slack = ex.tour_cost - ledger.base - ledger.correction;
  ex.anomalous = slack < 0;
  ex.certified_unsat_bound = std::max(slack, 0);
  return ex;
}

GapRow GapReport(Variant v, double eps, double tau, int m3, int n_wheels) {
  if (!(eps > 0 && eps < 0.5)) throw ForgeError(ErrorKind::kInvalidParameter, "epsilon must lie in (0, 1/2)");
  if (!(tau > 0)) throw ForgeError(ErrorKind::kInvalidParameter, "tau must be positive");
  if (m3 < 1 || n_wheels < 1) throw ForgeError(ErrorKind::kInvalidParameter, "need m3 >= 1 and n >= 1");
  GapRow row;
  row.variant = v;
  row.constant = 2 * LedgerConstants(v).first;
  const double c = row.constant;
  row.limit = (c + 1) / c;
  // Per unit of nu: the yes case pays c + eps, plus tau for the border
  // offset; the no case pays at least c + 1 - eps.
  row.ratio = (c + 1 - eps) / (c + eps + tau);
  row.error = std::fabs(row.ratio - row.limit);
  const double nu = m3 / 2.0;
  const double base = LedgerBase(v, m3, n_wheels) + LedgerCorrection(v);
  row.yes_cost = base + eps * nu;
  row.no_cost = base + (1 - eps) * nu;
  return row;
}

nlohmann::json InstanceToJson(const BuiltInstance& inst) {
  const CostLedger ledger = inst.Ledger();
  return {{"variant", ToString(inst.variant)},
          {"params",
           {{"nu2", inst.num_three_var()},
            {"n_wheels", inst.num_wheels()},
            {"vertices", inst.graph.num_vertices()},
            {"edges", inst.graph.num_edges()}}},
          {"ledger", {{"base", ledger.base}, {"correction", ledger.correction}}},
          {"hybrid", HybridToJson(inst.hybrid)},
          {"graph", GraphToJson(inst.graph)}};
}

BuiltInstance InstanceFromJson(const nlohmann::json& j) {
  try {
    const Variant v = VariantFromString(j.at("variant").get<std::string>());
    BuiltInstance inst = BuildInstance(HybridFromJson(j.at("hybrid")), v);
    if (j.contains("graph") && !(GraphFromJson(j.at("graph")) == inst.graph)) {
      throw ForgeError(ErrorKind::kBuildError, "stored graph differs from the rebuilt instance");
    }
    return inst;
  } catch (const nlohmann::json::exception& ex) {
    throw ForgeError(ErrorKind::kInvalidInput, std::string("instance json: ") + ex.what());
  }
}

}  // namespace gapforge
