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

#ifndef GAPFORGE_HYBRID_HPP_
#define GAPFORGE_HYBRID_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gapforge/lin_system.hpp"
#include "gapforge/wheel.hpp"

namespace gapforge {

// Where a three-variable equation's literal lives: the contact 7j of
// wheel `wheel` (j = contact_index).
struct ContactRef {
  int wheel = 0;
  int contact_index = 0;  // 1-based j; the wheel vertex is 7j
  int equation = 0;       // index into HybridInstance::three_var
  int position = 0;       // literal slot 0..2
};

// A bounded-occurrence system obtained from an E3 system: one wheel per
// original variable, its vertices become variables, and each occurrence
// is moved onto its own contact.
struct HybridInstance {
  LinSystem system;
  std::vector<WheelAmplifier> wheels;
  std::vector<int> wheel_offset;   // variable id of vertex 1 of each wheel
  std::vector<int> source_var;     // original E3 variable of each wheel
  std::vector<int> three_var;      // indices into system.equations
  // contacts[e][p] for three_var equation e, literal slot p.
  std::vector<std::vector<ContactRef>> contacts;
  int rhs = 0;                     // common right-hand side of three-var equations
  std::vector<std::string> warnings;

  int num_wheels() const { return static_cast<int>(wheels.size()); }
  int num_three_var() const { return static_cast<int>(three_var.size()); }
  // Variable id of 1-based vertex v of wheel w.
  int VarOf(int w, int v) const { return wheel_offset[w] + v - 1; }

  // Throws kBuildError when the contact map disagrees with the system.
  void Validate() const;
};

struct ReduceOptions {
  std::uint64_t seed = 1;
  // Matchings are redrawn until the amplifier condition holds; 1 keeps
  // the first raw draw.
  int max_draws = 100;
  AmplifierCheckOptions check;
};

// Requires every equation to have exactly three literals. Each equation
// is repeated k times. Three-variable equations are rewritten to rhs b by
// toggling their first literal.
HybridInstance ReduceToHybrid(const LinSystem& e3, int b, int k, const ReduceOptions& options = {});

bool IsConsistent(const HybridInstance& h, const Assignment& a);

// Sets every wheel to the majority value of its contacts, ties to 0.
Assignment MakeConsistent(const HybridInstance& h, const Assignment& a);

// Lifts one bit per wheel to a consistent assignment.
Assignment ExpandWheelBits(const HybridInstance& h, const std::vector<std::uint8_t>& wheel_bits);

// Wheel bits of a consistent assignment (vertex 1 of each wheel).
std::vector<std::uint8_t> WheelBits(const HybridInstance& h, const Assignment& a);

// Adds "wheels" and "contacts" to the system json so the instance can be
// rebuilt without redrawing matchings.
nlohmann::json HybridToJson(const HybridInstance& h);
HybridInstance HybridFromJson(const nlohmann::json& j);

}  // namespace gapforge

#endif  // GAPFORGE_HYBRID_HPP_
