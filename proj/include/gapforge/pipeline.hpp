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

#ifndef GAPFORGE_PIPELINE_HPP_
#define GAPFORGE_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gapforge/gadgets.hpp"
#include "gapforge/oracles.hpp"
#include "gapforge/reduction.hpp"

namespace gapforge {

struct RunConfig {
  std::uint64_t seed = 1;
  Variant variant = Variant::kSubcubic;
  int k = 1;    // equation repetitions in the hybrid reduction
  int rhs = 0;  // common right-hand side of the three-variable equations
  EnumerationBudget budget;
};

// One manifest line: which invariant was checked at which stage.
struct Check {
  std::string stage;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Bundle {
  nlohmann::json e3;
  nlohmann::json hybrid;
  nlohmann::json instance;
  nlohmann::json assignment;   // hybrid-level assignment fed to the tour
  nlohmann::json tour;
  nlohmann::json extraction;
  std::vector<Check> checks;
  std::string failed_stage;    // empty when every stage ran

  bool ok() const;
  nlohmann::json Manifest(const RunConfig& config) const;
};

// reduce -> build -> (assign -> tour -> extract). `e3_bits` is an
// assignment of the input's variables; when absent the tour stages are
// skipped. Stage failures are recorded, never thrown.
Bundle RunPipeline(const nlohmann::json& e3_input, const RunConfig& config,
                   const std::optional<std::vector<std::uint8_t>>& e3_bits);

// Writes each artifact plus manifest.json into `dir`.
void WriteBundle(const Bundle& bundle, const RunConfig& config, const std::string& dir);

struct VerifyOptions {
  bool quick = false;  // skips the nu = 2 round-trip sweep
  std::uint64_t seed = 1;
  int wheels = 20;     // amplifier draws per d
  EnumerationBudget budget;
};

struct VerifyReport {
  std::vector<Check> checks;
  bool ok() const;
  nlohmann::json ToJson() const;
};

// Regression harness: gadget tables and composites, amplifier agreement,
// cost identities and round trips, oracle cross-checks. `catalog` lets a
// caller substitute blueprints; empty means the shipped catalog.
VerifyReport VerifyAll(const VerifyOptions& options, std::vector<GadgetBlueprint> catalog = {});

enum class ExportFormat { kJson, kDot, kTsplib, kText };
ExportFormat ExportFormatFromString(std::string_view text);

// Bit-stable rendering; edges appear in (min, max) order.
std::string ExportInstance(const BuiltInstance& inst, ExportFormat format);

nlohmann::json ExtractionToJson(const BuiltInstance& inst, const Extraction& ex);

}  // namespace gapforge

#endif  // GAPFORGE_PIPELINE_HPP_
