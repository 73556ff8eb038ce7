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

#include "gapforge/pipeline.hpp"

#include <filesystem>
#include <sstream>

#include "gapforge/error.hpp"
#include "gapforge/graph_io.hpp"

namespace gapforge {

namespace {

nlohmann::json ChecksToJson(const std::vector<Check>& checks) {
  nlohmann::json out = nlohmann::json::array();
  for (const Check& c : checks) {
    out.push_back({{"stage", c.stage}, {"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  return out;
}

bool AllPass(const std::vector<Check>& checks) {
  for (const Check& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string Join(const std::vector<std::string>& parts, std::size_t limit = 6) {
  std::string out;
  for (std::size_t i = 0; i < parts.size() && i < limit; ++i) {
    if (i) out += "; ";
    out += parts[i];
  }
  if (parts.size() > limit) out += "; ... (" + std::to_string(parts.size()) + " total)";
  return out;
}

}  // namespace

bool Bundle::ok() const { return failed_stage.empty() && AllPass(checks); }

nlohmann::json Bundle::Manifest(const RunConfig& config) const {
  return {{"config",
           {{"seed", config.seed},
            {"variant", ToString(config.variant)},
            {"k", config.k},
            {"rhs", config.rhs}}},
          {"checks", ChecksToJson(checks)},
          {"failed_stage", failed_stage.empty() ? nlohmann::json(nullptr) : nlohmann::json(failed_stage)},
          {"ok", ok()},
          {"tour_cost", extraction.is_null() ? nlohmann::json(nullptr) : extraction.at("tour_cost")}};
}

nlohmann::json ExtractionToJson(const BuiltInstance& inst, const Extraction& ex) {
  return {{"assignment", AssignmentToJson(ex.assignment)},
          {"unsatisfied", CountUnsatisfiedOfArity(inst.hybrid.system, ex.assignment, 3)},
          {"certified_unsat_bound", ex.certified_unsat_bound},
          {"anomalous", ex.anomalous},
          {"tour_cost", ex.tour_cost},
          {"repaired_cost", ex.repaired_cost},
          {"repair_complete", ex.repair_complete}};
}

Bundle RunPipeline(const nlohmann::json& e3_input, const RunConfig& config,
                   const std::optional<std::vector<std::uint8_t>>& e3_bits) {
  Bundle bundle;
  bundle.e3 = e3_input;
  std::string stage = "parse";
  auto check = [&](const std::string& name, bool pass, const std::string& detail) {
    bundle.checks.push_back({stage, name, pass, detail});
    return pass;
  };
  try {
    const LinSystem e3 = LinSystemFromJson(e3_input);

    stage = "reduce_to_hybrid";
    ReduceOptions ro;
    ro.seed = config.seed;
    ro.check.seed = config.seed;
    const HybridInstance h = ReduceToHybrid(e3, config.rhs, config.k, ro);
    bundle.hybrid = HybridToJson(h);
    h.Validate();
    check("contact map", true, std::to_string(h.num_wheels()) + " wheels, " +
                                   std::to_string(h.num_three_var()) + " three-variable equations");
    bool three_each = true;
    for (int c : h.system.Occurrences()) three_each &= c == 3;
    check("every variable in three equations", three_each,
          std::to_string(h.system.num_vars) + " variables, " + std::to_string(h.system.CountArity(2)) +
              " two-variable equations");
    for (const std::string& w : h.warnings) check("warning", true, w);

    stage = "build_instance";
    const BuiltInstance inst = BuildInstance(h, config.variant);
    bundle.instance = InstanceToJson(inst);
    const DegreeProfile dp = GetDegreeProfile(inst.graph);
    check("degree profile", true,
          "max " + std::to_string(dp.max_degree) + ", min " + std::to_string(dp.min_degree) +
              (dp.is_regular ? ", regular" : ""));

    if (!e3_bits) return bundle;

    stage = "assign_to_tour";
    if (static_cast<int>(e3_bits->size()) != e3.num_vars) {
      throw ForgeError(ErrorKind::kInvalidInput, "assignment has " + std::to_string(e3_bits->size()) +
                                                     " bits for " + std::to_string(e3.num_vars) +
                                                     " variables");
    }
    std::vector<std::uint8_t> wheel_bits(h.num_wheels());
    for (int w = 0; w < h.num_wheels(); ++w) wheel_bits[w] = (*e3_bits)[h.source_var[w]] & 1;
    const Assignment a = ExpandWheelBits(h, wheel_bits);
    bundle.assignment = AssignmentToJson(a);
    const TourPlan plan = AssignToTour(inst, a);
    bundle.tour = TourToJson(plan.tour);
    const int measured = VariantCost(inst, plan.tour);
    const int u = plan.predicted.delta;
    check("cost identity", measured == plan.predicted.Predicted(),
          "measured " + std::to_string(measured) + ", base " + std::to_string(plan.predicted.base) +
              " + correction " + std::to_string(plan.predicted.correction) + " + unsatisfied " +
              std::to_string(u));

    stage = "tour_to_assignment";
    const Extraction ex = TourToAssignment(inst, plan.tour);
    bundle.extraction = ExtractionToJson(inst, ex);
    const int u_out = CountUnsatisfiedOfArity(h.system, ex.assignment, 3);
    check("round trip", u_out <= u,
          "unsatisfied " + std::to_string(u) + " -> " + std::to_string(u_out));
    check("certified bound", u_out <= ex.certified_unsat_bound && !ex.anomalous,
          "bound " + std::to_string(ex.certified_unsat_bound));
  } catch (const std::exception& e) {
    bundle.failed_stage = stage;
    bundle.checks.push_back({stage, "stage completed", false, e.what()});
  }
  return bundle;
}

void WriteBundle(const Bundle& bundle, const RunConfig& config, const std::string& dir) {
  std::filesystem::create_directories(dir);
  auto put = [&](const char* name, const nlohmann::json& j) {
    if (!j.is_null()) WriteTextFile(dir + "/" + name, j.dump(2) + "\n");
  };
  put("e3.json", bundle.e3);
  put("hybrid.json", bundle.hybrid);
  put("instance.json", bundle.instance);
  put("assignment.json", bundle.assignment);
  put("tour.json", bundle.tour);
  put("extraction.json", bundle.extraction);
  put("manifest.json", bundle.Manifest(config));
}

bool VerifyReport::ok() const { return AllPass(checks); }

nlohmann::json VerifyReport::ToJson() const { return {{"checks", ChecksToJson(checks)}, {"ok", ok()}}; }

namespace {

// Equations over three shared variables, alternating the last negation so
// every unsatisfied count the parity allows shows up.
LinSystem RoundTripSystem(int equations) {
  LinSystem s;
  s.num_vars = 3;
  for (int e = 0; e < equations; ++e) {
    s.equations.push_back({{0, 1, 2}, {0, 0, static_cast<std::uint8_t>(e & 1)}, 0, EqKind::kThreeVar});
  }
  return s;
}

void CostSweep(const LinSystem& e3, const VerifyOptions& opt, const std::string& stage,
               std::vector<Check>& checks) {
  ReduceOptions ro;
  ro.seed = opt.seed;
  const HybridInstance h = ReduceToHybrid(e3, 0, 1, ro);
  for (Variant v : AllVariants()) {
    const BuiltInstance inst = BuildInstance(h, v);
    std::vector<std::string> bad;
    for (int mask = 0; mask < (1 << h.num_wheels()); ++mask) {
      std::vector<std::uint8_t> bits(h.num_wheels());
      for (int w = 0; w < h.num_wheels(); ++w) bits[w] = mask >> w & 1;
      const TourPlan plan = AssignToTour(inst, ExpandWheelBits(h, bits));
      const int measured = VariantCost(inst, plan.tour);
      if (measured != plan.predicted.Predicted()) {
        bad.push_back("bits " + std::to_string(mask) + ": " + std::to_string(measured) + " vs " +
                      std::to_string(plan.predicted.Predicted()));
      }
      const Extraction ex = TourToAssignment(inst, plan.tour);
      const int u_out = CountUnsatisfiedOfArity(h.system, ex.assignment, 3);
      if (u_out > plan.predicted.delta) {
        bad.push_back("bits " + std::to_string(mask) + ": round trip " +
                      std::to_string(plan.predicted.delta) + " -> " + std::to_string(u_out));
      }
    }
    checks.push_back({stage, std::string(ToString(v)) + " cost identity and round trip", bad.empty(),
                      bad.empty() ? "base " + std::to_string(inst.Ledger().base) : Join(bad)});
  }
}

}  // namespace

VerifyReport VerifyAll(const VerifyOptions& opt, std::vector<GadgetBlueprint> catalog) {
  VerifyReport report;
  auto& checks = report.checks;
  if (catalog.empty()) catalog = GadgetCatalog();
  auto guarded = [&](const std::string& stage, const std::string& name, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      checks.push_back({stage, name, false, e.what()});
    }
  };

  for (const GadgetBlueprint& bp : catalog) {
    guarded("gadgets", bp.name, [&] {
      const GadgetReport r = VerifyGadget(bp, opt.budget);
      std::vector<std::string> diff;
      for (const auto& m : r.missing) diff.push_back("missing " + m);
      for (const auto& m : r.extra) diff.push_back("extra " + m);
      for (const auto& m : r.problems) diff.push_back(m);
      checks.push_back({"gadgets", bp.name, r.clean,
                        r.clean ? std::to_string(r.routes_enumerated) + " routes" : Join(diff)});
    });
    if (bp.modules.empty()) continue;
    for (bool modified : {false, true}) {
      const std::string name = bp.name + (modified ? " + modified parity" : " + parity");
      guarded("composites", name, [&] {
        EnumerationBudget b = opt.budget;
        b.path_vertices = std::max(b.path_vertices, 64);
        const CompositeCheck c = VerifyComposite(bp, modified, b);
        checks.push_back({"composites", name, c.consistent, Join(c.mismatches)});
      });
    }
  }

  for (int d : {1, 2}) {
    guarded("amplifier", "d=" + std::to_string(d), [&] {
      int agree = 0;
      int holds = 0;
      for (int i = 0; i < opt.wheels; ++i) {
        const WheelAmplifier w = BuildWheel(d, opt.seed + static_cast<std::uint64_t>(i));
        const AmplifierVerdict a = CheckAmplifier(w, {});
        const AmplifierVerdict b = ExhaustiveSubsets(w, opt.budget);
        agree += a.holds == b.holds;
        holds += b.holds;
      }
      checks.push_back({"amplifier", "d=" + std::to_string(d), agree == opt.wheels,
                        std::to_string(agree) + "/" + std::to_string(opt.wheels) + " agree, " +
                            std::to_string(holds) + " hold"});
    });
  }

  guarded("costs", "nu=1", [&] { CostSweep(RoundTripSystem(2), opt, "costs nu=1", checks); });
  if (!opt.quick) {
    guarded("costs", "nu=2", [&] { CostSweep(RoundTripSystem(4), opt, "costs nu=2", checks); });
  }

  guarded("oracles", "census", [&] {
    const int max_n = opt.quick ? 5 : 6;
    int graphs = 0;
    std::vector<std::string> bad;
    for (const Graph& g : ConnectedGraphCensus(max_n)) {
      ++graphs;
      const GraphicCrossCheck gc = CrossCheckGraphic(g, opt.budget);
      if (!gc.agree) {
        bad.push_back(std::to_string(g.num_vertices()) + " vertices: " +
                      std::to_string(gc.multigraph_cost) + " vs " + std::to_string(gc.permutation_cost));
      }
      if (g.num_vertices() >= 3 && ExactTsp12(g, opt.budget).cost != PermutationSweep12(g, opt.budget).cost) {
        bad.push_back(std::to_string(g.num_vertices()) + " vertices: tsp12 disagrees");
      }
    }
    checks.push_back({"oracles", "graphic and (1,2) census up to " + std::to_string(max_n), bad.empty(),
                      bad.empty() ? std::to_string(graphs) + " graphs" : Join(bad)});
  });

  guarded("gap", "limits", [&] {
    std::vector<std::string> bad;
    for (Variant v : AllVariants()) {
      const GapRow row = GapReport(v, 1e-4, 1e-4);
      if (row.error > 1e-6) bad.push_back(std::string(ToString(v)) + " error " + std::to_string(row.error));
    }
    checks.push_back({"gap", "limiting ratios", bad.empty(), Join(bad)});
  });
  return report;
}

ExportFormat ExportFormatFromString(std::string_view text) {
  if (text == "json") return ExportFormat::kJson;
  if (text == "dot") return ExportFormat::kDot;
  if (text == "tsplib") return ExportFormat::kTsplib;
  if (text == "text") return ExportFormat::kText;
  throw ForgeError(ErrorKind::kInvalidParameter, "unknown format '" + std::string(text) + "'");
}

std::string ExportInstance(const BuiltInstance& inst, ExportFormat format) {
  const std::string name = "forge_" + std::string(ToString(inst.variant));
  switch (format) {
    case ExportFormat::kJson:
      return InstanceToJson(inst).dump(2) + "\n";
    case ExportFormat::kDot:
      return GraphToDot(inst.graph, name);
    case ExportFormat::kTsplib:
      return GraphToTsplib(inst.graph, name,
                           IsGraphic(inst.variant) ? TsplibWeights::kHopMetric : TsplibWeights::kOneTwo);
    case ExportFormat::kText: {
      const DegreeProfile dp = GetDegreeProfile(inst.graph);
      const CostLedger l = inst.Ledger();
      std::ostringstream out;
      out << "variant " << ToString(inst.variant) << "\n"
          << "wheels " << inst.num_wheels() << "\n"
          << "three-variable equations " << inst.num_three_var() << "\n"
          << "vertices " << inst.graph.num_vertices() << "\n"
          << "edges " << inst.graph.num_edges() << "\n"
          << "degree max " << dp.max_degree << " min " << dp.min_degree << "\n"
          << "ledger base " << l.base << " correction " << l.correction << "\n";
      return out.str();
    }
  }
  return {};
}

}  // namespace gapforge
