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

#include "gapforge/gadgets.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gapforge/error.hpp"
#include "gapforge/graph_io.hpp"

namespace gapforge {

Vertex GadgetBlueprint::Id(const std::string& vertex_name) const {
  for (Vertex v = 0; v < graph.num_vertices(); ++v) {
    if (graph.Label(v) == vertex_name) return v;
  }
  throw ForgeError(ErrorKind::kInvalidInput, name + ": no vertex named '" + vertex_name + "'");
}

std::vector<Edge> GadgetBlueprint::ModuleEdges() const {
  std::vector<Edge> out;
  for (const ModuleSlot& m : modules) out.push_back(Edge::Make(m.a, m.b));
  return out;
}

std::vector<char> GadgetBlueprint::PresentVertices(std::uint32_t mask) const {
  std::vector<char> keep(graph.num_vertices(), 1);
  for (size_t k = 0; k < modules.size(); ++k) {
    if (!(mask >> k & 1)) keep[modules[k].a] = keep[modules[k].b] = 0;
  }
  return keep;
}

namespace {

class Builder {
 public:
  explicit Builder(std::string name) { bp_.name = std::move(name); }

  Vertex V(const std::string& n) {
    for (Vertex v = 0; v < bp_.graph.num_vertices(); ++v) {
      if (bp_.graph.Label(v) == n) return v;
    }
    return bp_.graph.AddVertex(n);
  }
  Builder& Edges(std::initializer_list<std::pair<const char*, const char*>> edges) {
    for (auto [a, b] : edges) bp_.graph.AddEdge(V(a), V(b));
    return *this;
  }
  // Stubs "<name>a" and "<name>b"; `at_a` / `at_b` list core neighbours.
  Builder& Module(const std::string& n, int side, std::initializer_list<const char*> at_a,
                  std::initializer_list<const char*> at_b) {
    const Vertex a = V(n + "a");
    const Vertex b = V(n + "b");
    bp_.graph.AddEdge(a, b);
    for (const char* x : at_a) bp_.graph.AddEdge(V(x), a);
    for (const char* x : at_b) bp_.graph.AddEdge(V(x), b);
    bp_.modules.push_back({n, a, b, side});
    return *this;
  }
  Builder& Ports(std::initializer_list<const char*> names) {
    for (const char* n : names) bp_.ports[n] = V(n);
    return *this;
  }
  Builder& Terminal(const char* from, const char* to) {
    bp_.terminals.emplace_back(from, to);
    return *this;
  }
  Builder& Route(std::uint32_t mask, std::vector<std::string> seq) {
    bp_.traversals.push_back({mask, seq.front(), seq.back(), std::move(seq)});
    return *this;
  }
  Builder& Surcharge(std::vector<int> s, bool graphic = false) {
    bp_.surcharge = std::move(s);
    bp_.graphic_surcharge = graphic;
    return *this;
  }
  Builder& DegreeBound(int d) {
    bp_.degree_bound = d;
    return *this;
  }
  GadgetBlueprint Done() { return std::move(bp_); }

 private:
  GadgetBlueprint bp_;
};

void AllPortPairs(Builder& b) {
  const char* ports[] = {"l0", "l1", "r0", "r1"};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) b.Terminal(ports[i], ports[j]);
  }
}

}  // namespace

// 8-cycle l0-a-l1-c-r0-d-r1-b-l0 with chord a-d. b and c have degree 2.
GadgetBlueprint ParityGadget() {
  Builder b("parity");
  b.Ports({"l0", "l1", "r0", "r1"});
  b.Edges({{"l0", "a"}, {"l0", "b"}, {"l1", "a"}, {"l1", "c"}, {"r0", "c"},
           {"r0", "d"}, {"r1", "b"}, {"r1", "d"}, {"a", "d"}});
  AllPortPairs(b);
  b.Route(0, {"l0", "b", "r1", "d", "a", "l1", "c", "r0"});
  b.Route(0, {"l1", "c", "r0", "d", "a", "l0", "b", "r1"});
  return b.Done();
}

GadgetBlueprint ModifiedParityGadget() {
  Builder b("parity-modified");
  b.Ports({"l0", "l1", "r0", "r1"});
  b.Edges({{"l1", "a"}, {"r0", "d"}, {"a", "d"},
           {"l0", "a"}, {"r1", "d"},
           {"l0", "b1"}, {"b1", "b2"}, {"b2", "b3"}, {"b3", "b4"}, {"b1", "b3"}, {"b2", "b4"}, {"b4", "r1"},
           {"l1", "c1"}, {"c1", "c2"}, {"c2", "c3"}, {"c3", "c4"}, {"c1", "c3"}, {"c2", "c4"}, {"c4", "r0"}});
  AllPortPairs(b);
  for (const char* bp : {"b1 b2 b3 b4", "b1 b3 b2 b4"}) {
    for (const char* cp : {"c1 c2 c3 c4", "c1 c3 c2 c4"}) {
      std::istringstream bs(bp), cs(cp);
      std::vector<std::string> bq, cq;
      for (std::string t; bs >> t;) bq.push_back(t);
      for (std::string t; cs >> t;) cq.push_back(t);
      std::vector<std::string> zero{"l0"};
      zero.insert(zero.end(), bq.begin(), bq.end());
      zero.insert(zero.end(), {"r1", "d", "a", "l1"});
      zero.insert(zero.end(), cq.begin(), cq.end());
      zero.push_back("r0");
      std::vector<std::string> one{"l1"};
      one.insert(one.end(), cq.begin(), cq.end());
      one.insert(one.end(), {"r0", "d", "a", "l0"});
      one.insert(one.end(), bq.begin(), bq.end());
      one.push_back("r1");
      b.Route(0, zero);
      b.Route(0, one);
    }
  }
  return b.Done();
}

// Clause gadget: a spanning s->e route exists iff exactly two of the three
// module slots are present.
GadgetBlueprint Gadget2in3() {
  Builder b("2in3");
  b.Ports({"s", "e"});
  b.Edges({{"s", "c1"}, {"s", "c2"}, {"c1", "s_mid"}, {"c2", "s_mid"}, {"s_mid", "e"}});
  b.V("c3");
  b.Module("m0", 0, {"c1"}, {"c3"});
  b.Module("m1", 0, {"c2"}, {"c3"});
  b.Module("m2", 0, {"c3"}, {"e"});
  b.Terminal("s", "e");
  b.Route(3, {"s", "c1", "m0a", "m0b", "c3", "m1b", "m1a", "c2", "s_mid", "e"});
  b.Route(3, {"s", "c2", "m1a", "m1b", "c3", "m0b", "m0a", "c1", "s_mid", "e"});
  b.Route(5, {"s", "c2", "s_mid", "c1", "m0a", "m0b", "c3", "m2a", "m2b", "e"});
  b.Route(6, {"s", "c1", "s_mid", "c2", "m1a", "m1b", "c3", "m2a", "m2b", "e"});
  b.Surcharge({2, 1, 1, 0, 1, 0, 0, 1});
  return b.Done();
}

// Equality gadget: either the direct edge or the route through both modules.
GadgetBlueprint GadgetEq() {
  Builder b("eq");
  b.Ports({"s", "e"});
  b.Edges({{"s", "e"}});
  b.Module("m0", 1, {"s"}, {});
  b.Module("m1", 1, {}, {"e"});
  b.Edges({{"m0b", "m1a"}});
  b.Terminal("s", "e");
  b.Route(0, {"s", "e"});
  b.Route(3, {"s", "m0a", "m0b", "m1a", "m1b", "e"});
  b.Surcharge({0, 1, 1, 0});
  return b.Done();
}

// Equality gadget for the hop metric: when the modules disagree the route
// walks c1-c2 a second time, one unit above a spanning path.
GadgetBlueprint GadgetEqGraphic() {
  Builder b("eq-graphic");
  b.Ports({"s", "e"});
  b.Edges({{"s", "c2"}, {"c2", "c1"}, {"c1", "e"}});
  b.Module("m0", 1, {"s"}, {"c1"});
  b.Module("m1", 1, {"c2"}, {"e"});
  b.Terminal("s", "e");
  b.Route(0, {"s", "c2", "c1", "e"});
  b.Route(3, {"s", "m0a", "m0b", "c1", "c2", "m1a", "m1b", "e"});
  b.Surcharge({0, 1, 1, 0}, true);
  return b.Done();
}

// Three-variable gadget: a spanning s->s_next route exists iff an odd
// number of the three modules is present. v1 reaches degree 5.
GadgetBlueprint Gadget3Xor() {
  Builder b("3xor");
  b.Ports({"s", "s_next"});
  b.Edges({{"s", "v1"}, {"v2", "s_next"}});
  b.Module("m0", 0, {"v1"}, {"v1", "v2"});
  b.Module("m1", 0, {"v1"}, {"v2", "s_next"});
  b.Module("m2", 0, {"s", "v1"}, {"v2"});
  b.Terminal("s", "s_next");
  b.Route(1, {"s", "v1", "m0a", "m0b", "v2", "s_next"});
  b.Route(2, {"s", "v1", "m1a", "m1b", "v2", "s_next"});
  b.Route(4, {"s", "v1", "m2a", "m2b", "v2", "s_next"});
  b.Route(7, {"s", "m2a", "m2b", "v2", "m0b", "m0a", "v1", "m1a", "m1b", "s_next"});
  b.Surcharge({1, 0, 0, 1, 0, 1, 1, 0});
  b.DegreeBound(5);
  return b.Done();
}

std::vector<GadgetBlueprint> GadgetCatalog() {
  return {ParityGadget(), ModifiedParityGadget(), Gadget2in3(),
          GadgetEq(),     GadgetEqGraphic(),      Gadget3Xor()};
}

const std::vector<std::string>& ParityTraversal(const GadgetBlueprint& parity, TraversalKind kind) {
  const std::string from = kind == TraversalKind::kZero ? "l0" : "l1";
  for (const Traversal& t : parity.traversals) {
    if (t.from == from) return t.sequence;
  }
  throw ForgeError(ErrorKind::kInvalidInput, parity.name + " has no traversal from " + from);
}

namespace {

std::string Key(std::uint32_t mask, const std::vector<std::string>& seq) {
  std::string k = "mask=" + std::to_string(mask) + ":";
  for (size_t i = 0; i < seq.size(); ++i) k += (i ? "-" : "") + seq[i];
  return k;
}

// Paths are compared in the direction of the declared terminal pair.
std::vector<std::string> Oriented(std::vector<std::string> seq, const std::string& from) {
  if (!seq.empty() && seq.front() != from) std::reverse(seq.begin(), seq.end());
  return seq;
}

}  // namespace

GadgetReport VerifyGadget(const GadgetBlueprint& b, const EnumerationBudget& budget) {
  GadgetReport report;
  report.name = b.name;
  const Graph& g = b.graph;
  if (g.num_vertices() > budget.path_vertices) {
    throw ForgeError(ErrorKind::kRefuseExhaustive,
                     b.name + ": " + std::to_string(g.num_vertices()) +
                         " vertices exceeds the exhaustive budget");
  }
  auto problem = [&](const std::string& msg) { report.problems.push_back(msg); };

  std::set<Vertex> port_ids;
  for (const auto& [n, v] : b.ports) {
    if (v < 0 || v >= g.num_vertices()) problem("port " + n + " is not a vertex");
    else if (!port_ids.insert(v).second) problem("port " + n + " shares a vertex");
    else if (g.Degree(v) > b.degree_bound - 1) problem("port " + n + " has no free edge slot");
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.Degree(v) > b.degree_bound) {
      problem("vertex " + g.Label(v) + " has degree " + std::to_string(g.Degree(v)));
    }
  }
  for (const ModuleSlot& m : b.modules) {
    if (!g.HasEdge(m.a, m.b)) problem("module " + m.name + " stubs are not joined");
  }

  std::set<std::pair<std::string, std::string>> terminal_set;
  for (const auto& [f, t] : b.terminals) terminal_set.insert({f, t});

  std::set<std::string> declared;
  for (const Traversal& t : b.traversals) {
    const std::string key = Key(t.mask, t.sequence);
    if (t.mask >= static_cast<std::uint32_t>(b.num_masks())) {
      problem(key + ": mask out of range");
      continue;
    }
    if (!terminal_set.count({t.from, t.to})) problem(key + ": terminals not declared");
    if (t.sequence.empty() || t.sequence.front() != t.from || t.sequence.back() != t.to) {
      problem(key + ": sequence does not run between its terminals");
    }
    const std::vector<char> keep = b.PresentVertices(t.mask);
    std::vector<char> seen(g.num_vertices(), 0);
    bool ok = true;
    Vertex prev = -1;
    for (const std::string& n : t.sequence) {
      Vertex v = -1;
      try {
        v = b.Id(n);
      } catch (const ForgeError&) {
        ok = false;
        break;
      }
      if (!keep[v] || seen[v] || (prev >= 0 && !g.HasEdge(prev, v))) {
        ok = false;
        break;
      }
      seen[v] = 1;
      prev = v;
    }
    ok = ok && static_cast<size_t>(std::count(keep.begin(), keep.end(), 1)) == t.sequence.size();
    if (!ok) problem(key + ": not a spanning path of the present vertices");
    declared.insert(key);
  }

  std::set<std::string> found;
  for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(b.num_masks()); ++mask) {
    std::vector<Vertex> old_id;
    const Graph sub = InducedSubgraph(g, b.PresentVertices(mask), &old_id);
    auto local = [&](const std::string& n) {
      const Vertex v = b.Id(n);
      return static_cast<Vertex>(std::find(old_id.begin(), old_id.end(), v) - old_id.begin());
    };
    for (const auto& [from, to] : b.terminals) {
      for (const Path& p : EnumSpanningPaths(sub, local(from), local(to), budget)) {
        std::vector<std::string> seq;
        for (Vertex v : p) seq.push_back(sub.Label(v));
        found.insert(Key(mask, Oriented(seq, from)));
        ++report.routes_enumerated;
      }
    }
    if (!b.surcharge.empty()) {
      if (b.surcharge.size() != static_cast<size_t>(b.num_masks()) || b.terminals.size() != 1) {
        problem("surcharge table needs one entry per mask and a single terminal pair");
      } else {
        const auto& [from, to] = b.terminals.front();
        const int cost = ExactPathCost(sub, local(from), local(to), b.graphic_surcharge, budget);
        const int extra = cost - (sub.num_vertices() - 1);
        if (extra != b.surcharge[mask]) {
          problem("mask " + std::to_string(mask) + ": surcharge " + std::to_string(extra) +
                  " but table says " + std::to_string(b.surcharge[mask]));
        }
      }
    }
  }
  for (const std::string& k : declared) {
    if (!found.count(k)) report.missing.push_back(k);
  }
  for (const std::string& k : found) {
    if (!declared.count(k)) report.extra.push_back(k);
  }
  report.clean = report.missing.empty() && report.extra.empty() && report.problems.empty();
  return report;
}

Graph ComposeWithParity(const GadgetBlueprint& b, std::uint32_t mask, bool modified) {
  const GadgetBlueprint parity = modified ? ModifiedParityGadget() : ParityGadget();
  const Graph& g = b.graph;
  std::vector<char> keep(g.num_vertices(), 1);
  for (const ModuleSlot& m : b.modules) keep[m.a] = keep[m.b] = 0;
  std::vector<Vertex> old_id;
  Graph out = InducedSubgraph(g, keep, &old_id);
  std::vector<Vertex> new_id(g.num_vertices(), -1);
  for (size_t i = 0; i < old_id.size(); ++i) new_id[old_id[i]] = static_cast<Vertex>(i);
  // Stub vertex -> port vertex of the inserted gadget.
  for (size_t k = 0; k < b.modules.size(); ++k) {
    if (!(mask >> k & 1)) continue;
    const ModuleSlot& m = b.modules[k];
    const Vertex base = out.num_vertices();
    for (Vertex v = 0; v < parity.graph.num_vertices(); ++v) {
      out.AddVertex(m.name + ":" + parity.graph.Label(v));
    }
    for (const Edge& e : parity.graph.Edges()) out.AddEdge(base + e.u, base + e.v);
    const std::string side = std::to_string(m.side);
    new_id[m.a] = base + parity.Id("l" + side);
    new_id[m.b] = base + parity.Id("r" + side);
  }
  for (const Edge& e : g.Edges()) {
    if (keep[e.u] && keep[e.v]) continue;
    const bool stub_edge = std::any_of(b.modules.begin(), b.modules.end(), [&](const ModuleSlot& m) {
      return Edge::Make(m.a, m.b) == e;
    });
    if (stub_edge || new_id[e.u] < 0 || new_id[e.v] < 0) continue;
    out.AddEdge(new_id[e.u], new_id[e.v]);
  }
  return out;
}

CompositeCheck VerifyComposite(const GadgetBlueprint& b, bool modified, const EnumerationBudget& budget) {
  CompositeCheck check;
  const GadgetBlueprint parity = modified ? ModifiedParityGadget() : ParityGadget();
  // Side traversals per inserted gadget: every admissible route of one side.
  const int per_module = static_cast<int>(parity.traversals.size()) / 2;
  for (std::uint32_t mask = 0; mask < static_cast<std::uint32_t>(b.num_masks()); ++mask) {
    const Graph comp = ComposeWithParity(b, mask, modified);
    for (const auto& [from, to] : b.terminals) {
      Vertex f = -1, t = -1;
      for (Vertex v = 0; v < comp.num_vertices(); ++v) {
        if (comp.Label(v) == from) f = v;
        if (comp.Label(v) == to) t = v;
      }
      const size_t found = EnumSpanningPaths(comp, f, t, budget).size();
      size_t expected = 0;
      for (const Traversal& tr : b.traversals) {
        if (tr.mask == mask && tr.from == from && tr.to == to) {
          size_t ways = 1;
          for (int k = 0; k < static_cast<int>(b.modules.size()); ++k) {
            if (mask >> k & 1) ways *= per_module;
          }
          expected += ways;
        }
      }
      if (found != expected) {
        check.consistent = false;
        check.mismatches.push_back(b.name + " mask " + std::to_string(mask) + " " + from + "->" +
                                   to + ": " + std::to_string(found) + " paths, expected " +
                                   std::to_string(expected));
      }
    }
  }
  return check;
}

nlohmann::json BlueprintToJson(const GadgetBlueprint& b) {
  nlohmann::json ports = nlohmann::json::object();
  for (const auto& [n, v] : b.ports) ports[n] = v;
  nlohmann::json modules = nlohmann::json::array();
  for (const ModuleSlot& m : b.modules) {
    modules.push_back({{"name", m.name}, {"a", m.a}, {"b", m.b}, {"side", m.side}});
  }
  nlohmann::json terminals = nlohmann::json::array();
  for (const auto& [f, t] : b.terminals) terminals.push_back({f, t});
  nlohmann::json traversals = nlohmann::json::array();
  for (const Traversal& t : b.traversals) {
    traversals.push_back({{"mask", t.mask}, {"from", t.from}, {"to", t.to}, {"seq", t.sequence}});
  }
  return {{"name", b.name},
          {"graph", GraphToJson(b.graph)},
          {"ports", ports},
          {"modules", modules},
          {"terminals", terminals},
          {"traversals", traversals},
          {"surcharge", b.surcharge},
          {"graphic_surcharge", b.graphic_surcharge},
          {"degree_bound", b.degree_bound}};
}

GadgetBlueprint BlueprintFromJson(const nlohmann::json& j) {
  try {
    GadgetBlueprint b;
    b.name = j.at("name").get<std::string>();
    b.graph = GraphFromJson(j.at("graph"));
    for (const auto& [n, v] : j.at("ports").items()) b.ports[n] = v.get<Vertex>();
    for (const auto& m : j.at("modules")) {
      b.modules.push_back({m.at("name").get<std::string>(), m.at("a").get<Vertex>(),
                           m.at("b").get<Vertex>(), m.at("side").get<int>()});
    }
    for (const auto& t : j.at("terminals")) {
      b.terminals.emplace_back(t.at(0).get<std::string>(), t.at(1).get<std::string>());
    }
    for (const auto& t : j.at("traversals")) {
      b.traversals.push_back({t.at("mask").get<std::uint32_t>(), t.at("from").get<std::string>(),
                              t.at("to").get<std::string>(),
                              t.at("seq").get<std::vector<std::string>>()});
    }
    b.surcharge = j.value("surcharge", std::vector<int>{});
    b.graphic_surcharge = j.value("graphic_surcharge", false);
    b.degree_bound = j.value("degree_bound", 3);
    return b;
  } catch (const nlohmann::json::exception& ex) {
    throw ForgeError(ErrorKind::kInvalidInput, std::string("blueprint json: ") + ex.what());
  }
}

std::string BlueprintToDot(const GadgetBlueprint& b) {
  std::set<Vertex> ports;
  for (const auto& [n, v] : b.ports) ports.insert(v);
  std::string dot = GraphToDot(b.graph, b.name, ports);
  // Module stub edges drawn bold.
  for (const ModuleSlot& m : b.modules) {
    const Edge e = Edge::Make(m.a, m.b);
    const std::string plain = "  " + std::to_string(e.u) + " -- " + std::to_string(e.v) + ";\n";
    const std::string bold = "  " + std::to_string(e.u) + " -- " + std::to_string(e.v) +
                             " [style=bold, label=\"" + m.name + "\"];\n";
    const size_t pos = dot.find(plain);
    if (pos != std::string::npos) dot.replace(pos, plain.size(), bold);
  }
  return dot;
}

}  // namespace gapforge
