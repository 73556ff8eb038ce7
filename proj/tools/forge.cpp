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

// forge: command line front end. Exit codes: 0 ok, 1 usage, 2 invariant
// violation or rejected input (the report goes to stderr).

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gapforge/error.hpp"
#include "gapforge/graph_io.hpp"
#include "gapforge/hybrid.hpp"
#include "gapforge/oracles.hpp"
#include "gapforge/pipeline.hpp"
#include "gapforge/reduction.hpp"

namespace {

using gapforge::ErrorKind;
using gapforge::ForgeError;
using Json = nlohmann::json;

// Thrown after a report has been printed; maps to exit code 2.
struct InvariantFailure {};

void Emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    gapforge::WriteTextFile(out, text);
  }
}

void EmitJson(const Json& j, const std::string& out) { Emit(j.dump(2) + "\n", out); }

gapforge::Graph LoadGraph(const std::string& path) {
  const Json j = gapforge::ReadJsonFile(path);
  return gapforge::GraphFromJson(j.contains("graph") ? j.at("graph") : j);
}

// Random E3 system: distinct variables per equation, random signs and
// right-hand sides.
gapforge::LinSystem RandomE3(int equations, int vars, std::uint64_t seed) {
  if (vars < 3 || equations < 1) {
    throw ForgeError(ErrorKind::kInvalidParameter, "need at least 3 variables and 1 equation");
  }
  std::mt19937_64 rng(seed);
  gapforge::LinSystem s;
  s.num_vars = vars;
  std::vector<int> ids(vars);
  for (int i = 0; i < vars; ++i) ids[i] = i;
  for (int e = 0; e < equations; ++e) {
    std::shuffle(ids.begin(), ids.end(), rng);
    gapforge::Equation eq;
    eq.vars = {ids[0], ids[1], ids[2]};
    eq.neg = {static_cast<std::uint8_t>(rng() & 1), static_cast<std::uint8_t>(rng() & 1),
              static_cast<std::uint8_t>(rng() & 1)};
    eq.rhs = static_cast<int>(rng() & 1);
    eq.kind = gapforge::EqKind::kThreeVar;
    s.equations.push_back(eq);
  }
  return s;
}

// Labels of core parity gadgets the tour does not cross along one of
// their two routes, i.e. where a repair has to start.
std::vector<std::string> InconsistentGadgets(const gapforge::BuiltInstance& inst, const gapforge::Tour& t) {
  std::vector<std::string> out;
  if (gapforge::IsCubic(inst.variant)) return out;
  const gapforge::PathCover cover(inst.core, t);
  std::vector<char> scratch(inst.core.num_vertices(), 0);
  const auto blocks = gapforge::ParityBlocks(inst);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (gapforge::MatchingRoute(cover, blocks[i], scratch) < 0) {
      const std::string& label = inst.core.Label(inst.gadgets[i].ids[0]);
      out.push_back(label.substr(0, label.rfind('/')));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: build and check bounded-degree TSP instances from mod-2 equation systems"};
  app.require_subcommand(1);

  // gen-hybrid
  std::string in, out, variant_name = "subcubic", assign_path, tour_path, format = "json";
  std::uint64_t seed = 1;
  int k = 1, rhs = 0, equations = 0, vars = 0;
  auto* gen = app.add_subcommand("gen-hybrid", "Reduce an E3 system to a hybrid instance");
  gen->add_option("--in", in, "E3 system json; omit to draw a random one");
  gen->add_option("--equations", equations, "random system: number of equations");
  gen->add_option("--vars", vars, "random system: number of variables");
  gen->add_option("--b", rhs, "common right-hand side of three-variable equations")->check(CLI::Range(0, 1));
  gen->add_option("-k,--k", k, "equation repetitions")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "seed for wheels (and the random system)");
  gen->add_option("--out", out, "output file (stdout when omitted)");

  auto* build = app.add_subcommand("build", "Build the TSP instance of a hybrid instance");
  build->add_option("--variant", variant_name, "max5|subcubic|cubic|gr-subcubic|gr-cubic");
  build->add_option("--in", in, "hybrid json")->required();
  build->add_option("--seed", seed, "accepted for symmetry; construction is deterministic");
  build->add_option("--out", out, "output file");

  bool make_consistent = false;
  auto* tour = app.add_subcommand("tour", "Tour of an instance for a consistent assignment");
  tour->add_option("--in", in, "instance json")->required();
  tour->add_option("--assign", assign_path, "assignment json {\"bits\": [...]}")->required();
  tour->add_flag("--make-consistent", make_consistent, "apply majority consistency first");
  tour->add_option("--out", out, "tour output file");

  auto* extract = app.add_subcommand("extract", "Read an assignment back from a tour");
  extract->add_option("--in", in, "instance json")->required();
  extract->add_option("--tour", tour_path, "tour json {\"order\": [...]}")->required();
  extract->add_option("--out", out, "output file");

  bool quick = false;
  auto* verify = app.add_subcommand("verify", "Run the regression harness");
  verify->add_flag("--quick", quick, "skip the larger round-trip sweep");
  verify->add_option("--seed", seed, "seed for sampled wheels");
  verify->add_option("--out", out, "report file");

  auto* oracle = app.add_subcommand("oracle", "Exact reference solvers");
  oracle->require_subcommand(1);
  auto* o_tsp = oracle->add_subcommand("tsp12", "exact (1,2)-TSP");
  o_tsp->add_option("--in", in, "graph json")->required();
  auto* o_gr = oracle->add_subcommand("graphic", "exact graphic TSP");
  o_gr->add_option("--in", in, "graph json")->required();
  int from = 0, to = 1;
  auto* o_paths = oracle->add_subcommand("paths", "spanning paths between two vertices");
  o_paths->add_option("--in", in, "graph json")->required();
  o_paths->add_option("--from", from, "start vertex")->required();
  o_paths->add_option("--to", to, "end vertex")->required();
  int wheel_d = 1;
  auto* o_amp = oracle->add_subcommand("amplifier", "amplifier condition of a wheel");
  o_amp->add_option("--in", in, "wheel json; omit to draw one");
  o_amp->add_option("--d", wheel_d, "occurrences when drawing")->check(CLI::PositiveNumber);
  o_amp->add_option("--seed", seed, "seed when drawing");

  auto* exp = app.add_subcommand("export", "Export an instance");
  exp->add_option("--in", in, "instance json")->required();
  exp->add_option("--format", format, "json|dot|tsplib|text");
  exp->add_option("--out", out, "output file");

  double eps = 1e-4, tau = 1e-4;
  int m3 = 2, n_wheels = 3;
  auto* gap = app.add_subcommand("gap", "Inapproximability ratio arithmetic");
  gap->add_option("--variant", variant_name, "variant or 'all'");
  gap->add_option("--eps", eps, "epsilon in (0, 1/2)");
  gap->add_option("--tau", tau, "tau > 0");
  gap->add_option("--m3", m3, "three-variable equations for the concrete costs");
  gap->add_option("--n", n_wheels, "wheels for the concrete costs");

  std::string bits_path;
  bool all_zero = false;
  auto* pipe = app.add_subcommand("pipeline", "reduce, build, tour and extract in one run");
  pipe->add_option("--in", in, "E3 system json")->required();
  pipe->add_option("--variant", variant_name, "variant");
  pipe->add_option("--seed", seed, "seed");
  pipe->add_option("-k,--k", k, "equation repetitions")->check(CLI::PositiveNumber);
  pipe->add_option("--b", rhs, "common right-hand side")->check(CLI::Range(0, 1));
  pipe->add_option("--assign", bits_path, "assignment of the E3 variables");
  pipe->add_flag("--all-zero", all_zero, "use the all-zero assignment");
  pipe->add_option("--out", out, "bundle directory (manifest to stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    const gapforge::EnumerationBudget budget = gapforge::EnumerationBudget::FromEnvironment();
    if (gen->parsed()) {
      gapforge::LinSystem e3;
      if (!in.empty()) {
        e3 = gapforge::LinSystemFromJson(gapforge::ReadJsonFile(in));
      } else {
        e3 = RandomE3(equations, vars, seed);
      }
      gapforge::ReduceOptions ro;
      ro.seed = seed;
      ro.check.seed = seed;
      const gapforge::HybridInstance h = gapforge::ReduceToHybrid(e3, rhs, k, ro);
      for (const std::string& w : h.warnings) std::cerr << "warning: " << w << "\n";
      EmitJson(gapforge::HybridToJson(h), out);
    } else if (build->parsed()) {
      const auto h = gapforge::HybridFromJson(gapforge::ReadJsonFile(in));
      const auto inst = gapforge::BuildInstance(h, gapforge::VariantFromString(variant_name));
      EmitJson(gapforge::InstanceToJson(inst), out);
    } else if (tour->parsed()) {
      const auto inst = gapforge::InstanceFromJson(gapforge::ReadJsonFile(in));
      gapforge::Assignment a = gapforge::AssignmentFromJson(gapforge::ReadJsonFile(assign_path));
      if (static_cast<int>(a.bits.size()) != inst.hybrid.system.num_vars) {
        throw ForgeError(ErrorKind::kInvalidInput, "assignment length does not match the instance");
      }
      if (make_consistent) a = gapforge::MakeConsistent(inst.hybrid, a);
      const auto plan = gapforge::AssignToTour(inst, a);
      const int measured = gapforge::VariantCost(inst, plan.tour);
      Emit(gapforge::TourToJson(plan.tour).dump() + "\n", out);
      std::cerr << "cost " << measured << " predicted " << plan.predicted.Predicted() << " (base "
                << plan.predicted.base << " correction " << plan.predicted.correction
                << " unsatisfied " << plan.predicted.delta << ")\n";
      if (measured != plan.predicted.Predicted()) {
        std::cerr << "invariant violation: cost identity\n";
        throw InvariantFailure{};
      }
    } else if (extract->parsed()) {
      const auto inst = gapforge::InstanceFromJson(gapforge::ReadJsonFile(in));
      const auto t = gapforge::TourFromJson(gapforge::ReadJsonFile(tour_path));
      gapforge::ValidateTour(inst.graph, t);
      const auto ex = gapforge::TourToAssignment(inst, t);
      Json j = gapforge::ExtractionToJson(inst, ex);
      j["inconsistent_gadgets"] = InconsistentGadgets(inst, t);
      EmitJson(j, out);
      if (!ex.repair_complete) {
        std::cerr << "invariant violation: repair left inconsistent gadgets\n";
        throw InvariantFailure{};
      }
    } else if (verify->parsed()) {
      gapforge::VerifyOptions vo;
      vo.quick = quick;
      vo.seed = seed;
      vo.budget = budget;
      const auto report = gapforge::VerifyAll(vo);
      EmitJson(report.ToJson(), out);
      for (const auto& c : report.checks) {
        if (!c.pass) std::cerr << "FAIL " << c.stage << "/" << c.name << ": " << c.detail << "\n";
      }
      if (!report.ok()) throw InvariantFailure{};
    } else if (oracle->parsed()) {
      if (o_tsp->parsed()) {
        const auto sol = gapforge::ExactTsp12(LoadGraph(in), budget);
        EmitJson({{"cost", sol.cost}, {"tour", gapforge::TourToJson(sol.tour)}}, "");
      } else if (o_gr->parsed()) {
        EmitJson({{"cost", gapforge::ExactGraphicTsp(LoadGraph(in), budget)}}, "");
      } else if (o_paths->parsed()) {
        const auto paths = gapforge::EnumSpanningPaths(LoadGraph(in), from, to, budget);
        EmitJson({{"count", paths.size()}, {"paths", paths}}, "");
      } else if (o_amp->parsed()) {
        const gapforge::WheelAmplifier w =
            in.empty() ? gapforge::BuildWheel(wheel_d, seed) : gapforge::WheelFromJson(gapforge::ReadJsonFile(in));
        const auto fast = gapforge::CheckAmplifier(w, {});
        const auto slow = gapforge::ExhaustiveSubsets(w, budget);
        EmitJson({{"holds", fast.holds},
                  {"sampled", fast.sampled},
                  {"witness", fast.witness},
                  {"exhaustive_holds", slow.holds},
                  {"agree", fast.holds == slow.holds}},
                 "");
        if (fast.holds != slow.holds) throw InvariantFailure{};
      }
    } else if (exp->parsed()) {
      const auto inst = gapforge::InstanceFromJson(gapforge::ReadJsonFile(in));
      Emit(gapforge::ExportInstance(inst, gapforge::ExportFormatFromString(format)), out);
    } else if (gap->parsed()) {
      std::vector<gapforge::Variant> variants;
      if (variant_name == "all") {
        variants = gapforge::AllVariants();
      } else {
        variants = {gapforge::VariantFromString(variant_name)};
      }
      Json rows = Json::array();
      for (auto v : variants) {
        const auto r = gapforge::GapReport(v, eps, tau, m3, n_wheels);
        rows.push_back({{"variant", gapforge::ToString(v)},
                        {"constant", r.constant},
                        {"limit", r.limit},
                        {"ratio", r.ratio},
                        {"error", r.error},
                        {"yes_cost", r.yes_cost},
                        {"no_cost", r.no_cost}});
      }
      EmitJson(rows, "");
    } else if (pipe->parsed()) {
      gapforge::RunConfig config;
      config.seed = seed;
      config.variant = gapforge::VariantFromString(variant_name);
      config.k = k;
      config.rhs = rhs;
      config.budget = budget;
      const Json e3 = gapforge::ReadJsonFile(in);
      std::optional<std::vector<std::uint8_t>> bits;
      if (!bits_path.empty()) {
        bits = gapforge::AssignmentFromJson(gapforge::ReadJsonFile(bits_path)).bits;
      } else if (all_zero) {
        bits = std::vector<std::uint8_t>(e3.value("vars", 0), 0);
      }
      const auto bundle = gapforge::RunPipeline(e3, config, bits);
      if (out.empty()) {
        EmitJson(bundle.Manifest(config), "");
      } else {
        gapforge::WriteBundle(bundle, config, out);
      }
      if (!bundle.ok()) {
        for (const auto& c : bundle.checks) {
          if (!c.pass) std::cerr << "FAIL stage " << c.stage << ": " << c.name << ": " << c.detail << "\n";
        }
        throw InvariantFailure{};
      }
    }
  } catch (const InvariantFailure&) {
    return 2;
  } catch (const ForgeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
