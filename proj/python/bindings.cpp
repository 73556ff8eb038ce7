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

// Python bindings. Structured values cross the boundary as JSON text; the
// gapforge package decodes them into plain dicts and lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gapforge/error.hpp"
#include "gapforge/gadgets.hpp"
#include "gapforge/graph_io.hpp"
#include "gapforge/hybrid.hpp"
#include "gapforge/oracles.hpp"
#include "gapforge/pipeline.hpp"
#include "gapforge/reduction.hpp"

namespace py = pybind11;
using namespace gapforge;

namespace {

Json Parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ForgeError(ErrorKind::kInvalidInput, e.what());
  }
}

Tour ToTour(const std::vector<Vertex>& order) { return Tour{order}; }

}  // namespace

PYBIND11_MODULE(_gapforge, m) {
  m.doc() = "gapforge native core";
  static py::exception<ForgeError> forge_error(m, "ForgeError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ForgeError& e) {
      py::set_error(forge_error, e.what());
    }
  });

  m.def("variants", [] {
    std::vector<std::string> out;
    for (Variant v : AllVariants()) out.emplace_back(ToString(v));
    return out;
  });

  m.def(
      "reduce_to_hybrid",
      [](const std::string& e3, int b, int k, std::uint64_t seed) {
        ReduceOptions ro;
        ro.seed = seed;
        ro.check.seed = seed;
        return HybridToJson(ReduceToHybrid(LinSystemFromJson(Parse(e3)), b, k, ro)).dump();
      },
      py::arg("e3"), py::arg("b") = 0, py::arg("k") = 1, py::arg("seed") = 1);

  m.def(
      "make_consistent",
      [](const std::string& hybrid, std::vector<std::uint8_t> bits) {
        const HybridInstance h = HybridFromJson(Parse(hybrid));
        return MakeConsistent(h, Assignment{std::move(bits)}).bits;
      },
      py::arg("hybrid"), py::arg("bits"));

  py::class_<BuiltInstance>(m, "Instance")
      .def_property_readonly("variant", [](const BuiltInstance& i) { return std::string(ToString(i.variant)); })
      .def_property_readonly("num_vertices", [](const BuiltInstance& i) { return i.graph.num_vertices(); })
      .def_property_readonly("num_edges", [](const BuiltInstance& i) { return i.graph.num_edges(); })
      .def_property_readonly("num_vars", [](const BuiltInstance& i) { return i.hybrid.system.num_vars; })
      .def_property_readonly("num_wheels", &BuiltInstance::num_wheels)
      .def_property_readonly("num_three_var", &BuiltInstance::num_three_var)
      .def_property_readonly("ledger",
                             [](const BuiltInstance& i) {
                               const CostLedger l = i.Ledger();
                               return py::make_tuple(l.base, l.correction);
                             })
      .def("degree_profile",
           [](const BuiltInstance& i) {
             const DegreeProfile p = GetDegreeProfile(i.graph);
             return py::make_tuple(p.max_degree, p.min_degree, p.is_regular);
           })
      .def("expand_wheel_bits",
           [](const BuiltInstance& i, const std::vector<std::uint8_t>& wb) {
             return ExpandWheelBits(i.hybrid, wb).bits;
           })
      .def("assign_to_tour",
           [](const BuiltInstance& i, std::vector<std::uint8_t> bits) {
             const TourPlan p = AssignToTour(i, Assignment{std::move(bits)});
             return py::make_tuple(p.tour.order, p.predicted.Predicted());
           })
      .def("tour_cost", [](const BuiltInstance& i, const std::vector<Vertex>& order) {
        const Tour t = ToTour(order);
        ValidateTour(i.graph, t);
        return VariantCost(i, t);
      })
      .def("tour_to_assignment",
           [](const BuiltInstance& i, const std::vector<Vertex>& order) {
             const Tour t = ToTour(order);
             ValidateTour(i.graph, t);
             return ExtractionToJson(i, TourToAssignment(i, t)).dump();
           })
      .def("unsatisfied",
           [](const BuiltInstance& i, std::vector<std::uint8_t> bits) {
             const Assignment a{std::move(bits)};
             if (static_cast<int>(a.bits.size()) != i.hybrid.system.num_vars) {
               throw ForgeError(ErrorKind::kInvalidInput, "assignment length does not match");
             }
             return CountUnsatisfiedOfArity(i.hybrid.system, a, 3);
           })
      .def("to_json", [](const BuiltInstance& i) { return InstanceToJson(i).dump(); })
      .def("export", [](const BuiltInstance& i, const std::string& format) {
        return ExportInstance(i, ExportFormatFromString(format));
      });

  m.def(
      "build_instance",
      [](const std::string& hybrid, const std::string& variant) {
        return BuildInstance(HybridFromJson(Parse(hybrid)), VariantFromString(variant));
      },
      py::arg("hybrid"), py::arg("variant"));
  m.def("instance_from_json", [](const std::string& text) { return InstanceFromJson(Parse(text)); });

  m.def(
      "gap_report",
      [](const std::string& variant, double eps, double tau) {
        const GapRow r = GapReport(VariantFromString(variant), eps, tau);
        py::dict d;
        d["limit"] = r.limit;
        d["ratio"] = r.ratio;
        d["error"] = r.error;
        d["constant"] = r.constant;
        d["yes_cost"] = r.yes_cost;
        d["no_cost"] = r.no_cost;
        return d;
      },
      py::arg("variant"), py::arg("eps"), py::arg("tau"));

  m.def("exact_tsp12", [](const std::string& graph) {
    const Tsp12Solution s = ExactTsp12(GraphFromJson(Parse(graph)), EnumerationBudget::FromEnvironment());
    return py::make_tuple(s.cost, s.tour.order);
  });
  m.def("exact_graphic_tsp", [](const std::string& graph) {
    return ExactGraphicTsp(GraphFromJson(Parse(graph)), EnumerationBudget::FromEnvironment());
  });
  m.def("enum_spanning_paths", [](const std::string& graph, Vertex from, Vertex to) {
    return EnumSpanningPaths(GraphFromJson(Parse(graph)), from, to, EnumerationBudget::FromEnvironment());
  });
  m.def(
      "check_amplifier",
      [](int d, std::uint64_t seed) {
        const WheelAmplifier w = BuildWheel(d, seed);
        return py::make_tuple(CheckAmplifier(w, {}).holds, ExhaustiveSubsets(w).holds);
      },
      py::arg("d"), py::arg("seed"));
  m.def("verify_gadgets", [] {
    std::vector<std::pair<std::string, bool>> out;
    for (const GadgetBlueprint& b : GadgetCatalog()) out.emplace_back(b.name, VerifyGadget(b).clean);
    return out;
  });
}
