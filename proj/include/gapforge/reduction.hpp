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

#ifndef GAPFORGE_REDUCTION_HPP_
#define GAPFORGE_REDUCTION_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gapforge/graph.hpp"
#include "gapforge/hybrid.hpp"
#include "gapforge/path_cover.hpp"

namespace gapforge {

enum class Variant { kMax5, kSubcubic, kCubic, kGraphicSubcubic, kGraphicCubic };

std::string_view ToString(Variant v);
// Accepts max5, subcubic, cubic, gr-subcubic, gr-cubic (and the
// graphic_subcubic / graphic_cubic spellings).
Variant VariantFromString(std::string_view text);
std::vector<Variant> AllVariants();
bool IsGraphic(Variant v);
bool IsCubic(Variant v);
// The variant a cubic instance is expanded from; identity otherwise.
Variant CoreVariant(Variant v);

// Cost accounting for a built instance. `base` is the closed-form
// constant c*nu + offset(n); `correction` is what this construction adds
// on top of it (the extra expanded border vertex of the cubic variants).
struct CostLedger {
  int base = 0;
  int correction = 0;
  int delta = 0;  // unsatisfied three-variable equations

  int Predicted() const { return base + correction + delta; }
};

// c*nu + k*(n+1) - 1 with nu = m3/2.
int LedgerBase(Variant v, int m3, int n_wheels);
int LedgerCorrection(Variant v);

enum class GadgetRole { kWheel, kMatching, kContact, kCopy };

// A parity gadget placed in the core graph. ids follow the vertex order of
// ParityGadget(): l0, l1, r0, r1, a, b, c, d.
struct PlacedGadget {
  GadgetRole role = GadgetRole::kWheel;
  int wheel = -1;
  int vertex = 0;      // wheel vertex (1-based) for wheel, matching, contact roles
  int partner = 0;     // other end of a matching edge
  int equation = -1;   // contact and copy roles
  int position = -1;   // literal slot, or copy index 0..5 (a1_1..a1_3, a2_1..a2_3)
  std::array<Vertex, 8> ids{};

  Vertex Port(int side, bool right) const { return ids[(right ? 2 : 0) + side]; }
};

// One module slot of a wheel link: the gadget inserted on the edge leaving
// port r<trigger> of the wheel's parity gadget, crossed on `side`.
struct LinkModule {
  int gadget = -1;
  int trigger = 0;
  int side = 0;
};

// A blueprint instantiated on the outer loop.
struct PlacedPiece {
  int blueprint = 0;                 // index into GadgetCatalog()
  std::vector<Vertex> core_of;       // blueprint vertex -> core vertex, -1 for stubs
  std::vector<int> slot_gadget;      // module slot -> placed gadget
};

struct EquationPieces {
  std::vector<PlacedPiece> pieces;   // chain order
  std::vector<int> copies;           // six copy gadgets (subcubic-type variants)
};

// A degree-2 core vertex replaced by v1-v2-v3-v4 with chords v1v3, v2v4;
// x attaches to v1 and y to v4.
struct Expansion {
  Vertex core = -1;
  Vertex x = -1;
  Vertex y = -1;
  std::array<Vertex, 4> ids{};
};

struct BuiltInstance {
  Variant variant = Variant::kSubcubic;
  Graph graph;               // labels carry provenance
  HybridInstance hybrid;

  // Structure of the core graph (the whole graph unless cubic).
  Graph core;
  std::vector<PlacedGadget> gadgets;
  std::vector<std::vector<int>> wheel_gadgets;        // [wheel][vertex-1]
  std::vector<std::vector<LinkModule>> links;         // [wheel][vertex-1]
  std::vector<std::array<int, 3>> contact_gadgets;    // [equation][slot]
  std::vector<std::array<int, 3>> flips;              // per equation, see TriggerFlip
  std::vector<EquationPieces> equations;
  std::vector<Vertex> b1, b2, b3;                     // index 1..n+1, -1 if absent

  // Cubic expansion; empty otherwise.
  std::vector<Expansion> expansions;
  std::vector<int> expansion_of;                      // core vertex -> expansion or -1
  std::vector<Vertex> graph_id;                       // core vertex -> graph vertex (v1 if expanded)

  int num_wheels() const { return hybrid.num_wheels(); }
  int num_three_var() const { return hybrid.num_three_var(); }
  CostLedger Ledger(int unsatisfied = 0) const;
};

// Builds the TSP instance for a Hybrid instance. Throws kBuildError on an
// inconsistent contact map or an empty system.
BuiltInstance BuildInstance(const HybridInstance& hybrid, Variant variant);

// The subcubic-type instance a cubic instance was expanded from.
BuiltInstance CoreView(const BuiltInstance& inst);

struct TourPlan {
  Tour tour;
  CostLedger predicted;
};

// Tour of cost base + correction + (unsatisfied three-var equations) for a
// consistent assignment. Throws kMustBeConsistent otherwise.
TourPlan AssignToTour(const BuiltInstance& inst, const Assignment& a);

// (1,2) cost for the (1,2) variants, hop-metric cost for graphic ones.
int VariantCost(const BuiltInstance& inst, const Tour& t);

// Parity gadgets as repair blocks, in core ids.
std::vector<Block> ParityBlocks(const BuiltInstance& inst);

struct ConsistencyReport {
  RepairStats stats;
  bool fallback_used = false;
  bool consistent = false;
};

// Reroutes every parity gadget onto a zero- or one-traversal without
// increasing the (1,2) cost. Variant must not be cubic.
Tour MakeTourConsistent(const BuiltInstance& inst, const Tour& t, ConsistencyReport* report = nullptr);

// True when every parity gadget is crossed by one of its two traversals.
bool IsTourConsistent(const BuiltInstance& inst, const Tour& t);

// Normalises every expanded 4-path and contracts it, returning a tour of
// CoreView(inst). Variant must be cubic.
Tour ContractPaths(const BuiltInstance& inst, const Tour& t, RepairStats* stats = nullptr);

// Inverse of ContractPaths on normalised tours.
Tour ExpandTour(const BuiltInstance& inst, const Tour& core_tour);

struct Extraction {
  Assignment assignment;
  int certified_unsat_bound = 0;
  bool anomalous = false;   // cost below the ledger constant
  int tour_cost = 0;        // cost of the input tour under the variant
  int repaired_cost = 0;    // (1,2) cost after repair, on the core graph plus expansions
  bool repair_complete = false;
};

Extraction TourToAssignment(const BuiltInstance& inst, const Tour& t);

struct GapRow {
  Variant variant = Variant::kSubcubic;
  double limit = 0;        // (c+1)/c
  double ratio = 0;        // (c + 1 - eps) / (c + eps + tau)
  double error = 0;        // |ratio - limit|
  int constant = 0;        // c
  // Concrete two-case costs for the requested nu and n.
  double yes_cost = 0;
  double no_cost = 0;
};

// Throws kInvalidParameter unless 0 < eps < 1/2 and tau > 0.
GapRow GapReport(Variant v, double eps, double tau, int m3 = 2, int n_wheels = 3);

nlohmann::json InstanceToJson(const BuiltInstance& inst);
// Rebuilds from the embedded hybrid instance and checks the graph matches.
BuiltInstance InstanceFromJson(const nlohmann::json& j);

}  // namespace gapforge

#endif  // GAPFORGE_REDUCTION_HPP_
