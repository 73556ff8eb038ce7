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

#include <gtest/gtest.h>

#include <filesystem>

#include "gapforge/error.hpp"
#include "gapforge/graph_io.hpp"
#include "gapforge/pipeline.hpp"

namespace gapforge {
namespace {

nlohmann::json TwoEquationInput() {
  return {{"vars", 3}, {"eqs", {{{"v", {0, 1, 2}}, {"rhs", 0}}, {{"v", {0, 1, 2}}, {"rhs", 0}}}}};
}

TEST(Pipeline, SubcubicAllZero) {
  RunConfig c;
  const Bundle b = RunPipeline(TwoEquationInput(), c, std::vector<std::uint8_t>{0, 0, 0});
  EXPECT_TRUE(b.ok());
  EXPECT_EQ(b.extraction.at("tour_cost").get<int>(), 683);
  const nlohmann::json m = b.Manifest(c);
  EXPECT_EQ(m.at("tour_cost").get<int>(), 683);
  EXPECT_TRUE(m.at("ok").get<bool>());
}

TEST(Pipeline, CubicAllZeroFollowsLedger) {
  RunConfig c;
  c.variant = Variant::kCubic;
  const Bundle b = RunPipeline(TwoEquationInput(), c, std::vector<std::uint8_t>{0, 0, 0});
  EXPECT_TRUE(b.ok());
  // 1140 + 6*4 - 1 plus the expanded degree-2 vertex b1_1.
  EXPECT_EQ(b.extraction.at("tour_cost").get<int>(), 1163 + 3);
}

TEST(Pipeline, MalformedInputNamesStage) {
  const nlohmann::json bad = {{"vars", 3}, {"eqs", {{{"v", {0, 1}}, {"rhs", 0}}}}};
  const Bundle b = RunPipeline(bad, RunConfig{}, std::vector<std::uint8_t>{0, 0, 0});
  EXPECT_FALSE(b.ok());
  EXPECT_EQ(b.failed_stage, "reduce_to_hybrid");
  const Bundle c = RunPipeline(nlohmann::json{{"vars", "x"}}, RunConfig{}, std::nullopt);
  EXPECT_EQ(c.failed_stage, "parse");
}

TEST(Pipeline, WrongAssignmentLength) {
  const Bundle b = RunPipeline(TwoEquationInput(), RunConfig{}, std::vector<std::uint8_t>{0});
  EXPECT_EQ(b.failed_stage, "assign_to_tour");
}

TEST(Pipeline, DeterministicBundle) {
  RunConfig c;
  c.seed = 7;
  const auto dir = std::filesystem::temp_directory_path() / "gapforge_bundle_test";
  std::filesystem::remove_all(dir);
  WriteBundle(RunPipeline(TwoEquationInput(), c, std::vector<std::uint8_t>{1, 0, 0}), c, (dir / "a").string());
  WriteBundle(RunPipeline(TwoEquationInput(), c, std::vector<std::uint8_t>{1, 0, 0}), c, (dir / "b").string());
  for (const char* f : {"e3.json", "hybrid.json", "instance.json", "tour.json", "extraction.json", "manifest.json"}) {
    EXPECT_EQ(ReadTextFile((dir / "a" / f).string()), ReadTextFile((dir / "b" / f).string())) << f;
  }
  std::filesystem::remove_all(dir);
}

TEST(VerifyAll, QuickPasses) {
  VerifyOptions o;
  o.quick = true;
  const VerifyReport r = VerifyAll(o);
  EXPECT_TRUE(r.ok()) << r.ToJson().dump(2);
  bool saw_nu2 = false, saw_2in3 = false;
  for (const Check& c : r.checks) {
    saw_nu2 |= c.stage == "costs nu=2";
    saw_2in3 |= c.name == "2in3";
  }
  EXPECT_FALSE(saw_nu2);
  EXPECT_TRUE(saw_2in3);
}

TEST(VerifyAll, MutatedParityFailsWithDiff) {
  std::vector<GadgetBlueprint> catalog = GadgetCatalog();
  catalog[0].graph.RemoveEdge(catalog[0].Id("a"), catalog[0].Id("d"));
  VerifyOptions o;
  o.quick = true;
  const VerifyReport r = VerifyAll(o, catalog);
  EXPECT_FALSE(r.ok());
  bool diff = false;
  for (const Check& c : r.checks) {
    if (c.name == "parity" && !c.pass) diff = c.detail.find("missing") != std::string::npos;
  }
  EXPECT_TRUE(diff);
}

TEST(Export, FormatsAndDeterminism) {
  RunConfig c;
  const Bundle b = RunPipeline(TwoEquationInput(), c, std::nullopt);
  const BuiltInstance inst = InstanceFromJson(b.instance);
  const std::string tsp = ExportInstance(inst, ExportFormat::kTsplib);
  EXPECT_NE(tsp.find("DIMENSION : 683"), std::string::npos);
  EXPECT_EQ(tsp, ExportInstance(inst, ExportFormat::kTsplib));
  EXPECT_EQ(GraphFromTsplib12(tsp).Edges(), inst.graph.Edges());
  EXPECT_NE(ExportInstance(inst, ExportFormat::kDot).find("graph"), std::string::npos);
  EXPECT_NE(ExportInstance(inst, ExportFormat::kText).find("vertices 683"), std::string::npos);
  EXPECT_THROW(ExportFormatFromString("png"), ForgeError);
}

TEST(Export, TsplibRefusesLargeInstances) {
  RunConfig c;
  c.variant = Variant::kCubic;
  const Bundle b = RunPipeline(TwoEquationInput(), c, std::nullopt);
  const BuiltInstance inst = InstanceFromJson(b.instance);
  EXPECT_THROW(ExportInstance(inst, ExportFormat::kTsplib), ForgeError);
}

}  // namespace
}  // namespace gapforge
