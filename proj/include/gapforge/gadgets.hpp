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

#ifndef GAPFORGE_GADGETS_HPP_
#define GAPFORGE_GADGETS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gapforge/graph.hpp"
#include "gapforge/oracles.hpp"

namespace gapforge {

enum class TraversalKind { kZero = 0, kOne = 1 };

// A module slot stands for a parity gadget that wiring inserts here. In
// the blueprint graph it is two stub vertices joined by an edge; stub `a`
// becomes port l<side> of the real gadget and stub `b` becomes r<side>.
// A module is "present" when this gadget's route traverses it.
struct ModuleSlot {
  std::string name;
  Vertex a = 0;
  Vertex b = 0;
  int side = 0;
};

// A spanning route from one terminal to another when exactly the modules
// in `mask` are present. Vertices are given by name.
struct Traversal {
  std::uint32_t mask = 0;
  std::string from;
  std::string to;
  std::vector<std::string> sequence;
};

struct GadgetBlueprint {
  std::string name;
  Graph graph;  // vertex labels are the vertex names
  std::map<std::string, Vertex> ports;
  std::vector<ModuleSlot> modules;
  // Terminal pairs whose spanning routes the table must list completely.
  std::vector<std::pair<std::string, std::string>> terminals;
  std::vector<Traversal> traversals;
  // surcharge[mask]: cheapest route cost above a spanning path, under the
  // (1,2) weights or the hop metric when `graphic_surcharge` is set.
  std::vector<int> surcharge;
  bool graphic_surcharge = false;
  int degree_bound = 3;

  Vertex Id(const std::string& vertex_name) const;
  int num_masks() const { return 1 << modules.size(); }
  std::vector<Edge> ModuleEdges() const;
  // Vertices present under `mask`: everything except absent stubs.
  std::vector<char> PresentVertices(std::uint32_t mask) const;
};

GadgetBlueprint ParityGadget();
// Degree-2 inner vertices replaced by 4-paths with two chords.
GadgetBlueprint ModifiedParityGadget();
GadgetBlueprint Gadget2in3();
GadgetBlueprint GadgetEq();
GadgetBlueprint GadgetEqGraphic();
GadgetBlueprint Gadget3Xor();

std::vector<GadgetBlueprint> GadgetCatalog();

// Zero- and one-traversal vertex sequences of a parity gadget blueprint.
const std::vector<std::string>& ParityTraversal(const GadgetBlueprint& parity, TraversalKind kind);

struct GadgetReport {
  std::string name;
  bool clean = true;
  std::vector<std::string> missing;   // declared but not found
  std::vector<std::string> extra;     // found but not declared
  std::vector<std::string> problems;  // invalid entries, degree or surcharge mismatches
  std::uint64_t routes_enumerated = 0;
};

// Recomputes every terminal-to-terminal spanning route under every module
// mask by brute force and diffs against the table.
GadgetReport VerifyGadget(const GadgetBlueprint& b, const EnumerationBudget& budget = {});

// The blueprint with each module in `mask` replaced by a real parity gadget
// (modified when `modified`) and absent modules deleted.
Graph ComposeWithParity(const GadgetBlueprint& b, std::uint32_t mask, bool modified = false);

// Number of terminal-to-terminal spanning paths on the composite; each
// declared traversal should account for exactly as many paths as the
// inserted gadgets have side traversals.
struct CompositeCheck {
  bool consistent = true;
  std::vector<std::string> mismatches;
};
CompositeCheck VerifyComposite(const GadgetBlueprint& b, bool modified,
                               const EnumerationBudget& budget = {});

nlohmann::json BlueprintToJson(const GadgetBlueprint& b);
GadgetBlueprint BlueprintFromJson(const nlohmann::json& j);
std::string BlueprintToDot(const GadgetBlueprint& b);

}  // namespace gapforge

#endif  // GAPFORGE_GADGETS_HPP_
