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

#include "gapforge/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "gapforge/error.hpp"

namespace gapforge {

Json GraphToJson(const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.Edges()) edges.push_back({e.u, e.v});
  Json labels = Json::object();
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!g.Label(v).empty()) labels[std::to_string(v)] = g.Label(v);
  }
  return Json{{"n", g.num_vertices()}, {"edges", edges}, {"labels", labels}};
}

Graph GraphFromJson(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    Graph g(n);
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw ForgeError(ErrorKind::kInvalidInput, "edge must be a pair");
      }
      g.AddEdge(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    if (j.contains("labels")) {
      for (const auto& [key, value] : j.at("labels").items()) {
        const int v = std::stoi(key);
        if (v < 0 || v >= n) {
          throw ForgeError(ErrorKind::kInvalidInput, "label for unknown vertex " + key);
        }
        g.SetLabel(v, value.get<std::string>());
      }
    }
    return g;
  } catch (const Json::exception& ex) {
    throw ForgeError(ErrorKind::kInvalidInput, std::string("graph json: ") + ex.what());
  }
}

Json TourToJson(const Tour& t) { return Json{{"order", t.order}}; }

Tour TourFromJson(const Json& j) {
  try {
    return Tour{j.at("order").get<std::vector<Vertex>>()};
  } catch (const Json::exception& ex) {
    throw ForgeError(ErrorKind::kInvalidInput, std::string("tour json: ") + ex.what());
  }
}

namespace {

std::string DotEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string GraphToDot(const Graph& g, const std::string& name,
                       const std::set<Vertex>& highlight) {
  std::ostringstream os;
  os << "graph \"" << DotEscape(name) << "\" {\n";
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    os << "  " << v;
    std::string attrs;
    if (!g.Label(v).empty()) attrs += "label=\"" + DotEscape(g.Label(v)) + "\"";
    if (highlight.count(v)) {
      if (!attrs.empty()) attrs += ", ";
      attrs += "shape=box, style=filled, fillcolor=lightgrey";
    }
    if (!attrs.empty()) os << " [" << attrs << "]";
    os << ";\n";
  }
  for (const Edge& e : g.Edges()) os << "  " << e.u << " -- " << e.v << ";\n";
  os << "}\n";
  return os.str();
}

std::string GraphToTsplib(const Graph& g, const std::string& name,
                          TsplibWeights weights, int max_vertices) {
  const int n = g.num_vertices();
  if (n > max_vertices) {
    throw ForgeError(ErrorKind::kRefuseExhaustive,
                     "TSPLIB full matrix limited to " + std::to_string(max_vertices) +
                         " vertices (instance has " + std::to_string(n) +
                         "); export as json or dot instead");
  }
  DistanceMatrix metric;
  if (weights == TsplibWeights::kHopMetric) metric = MetricClosure(g);
  std::ostringstream os;
  os << "NAME : " << name << "\n"
     << "TYPE : TSP\n"
     << "COMMENT : "
     << (weights == TsplibWeights::kOneTwo ? "(1,2) weights" : "shortest-path metric")
     << "\n"
     << "DIMENSION : " << n << "\n"
     << "EDGE_WEIGHT_TYPE : EXPLICIT\n"
     << "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n"
     << "EDGE_WEIGHT_SECTION\n";
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      int w = 0;
      if (u != v) {
        w = weights == TsplibWeights::kOneTwo ? (g.HasEdge(u, v) ? 1 : 2) : metric(u, v);
      }
      os << (v ? " " : "") << w;
    }
    os << "\n";
  }
  os << "EOF\n";
  return os.str();
}

Graph GraphFromTsplib12(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int n = -1;
  while (std::getline(is, line)) {
    if (line.rfind("DIMENSION", 0) == 0) {
      n = std::stoi(line.substr(line.find(':') + 1));
    } else if (line.rfind("EDGE_WEIGHT_SECTION", 0) == 0) {
      break;
    }
  }
  if (n < 0) throw ForgeError(ErrorKind::kInvalidInput, "TSPLIB: missing DIMENSION");
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      int w = 0;
      if (!(is >> w)) throw ForgeError(ErrorKind::kInvalidInput, "TSPLIB: short matrix");
      if (u < v && w == 1) g.AddEdge(u, v);
    }
  }
  return g;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ForgeError(ErrorKind::kInvalidInput, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ForgeError(ErrorKind::kInvalidInput, "cannot write " + path);
  out << text;
}

Json ReadJsonFile(const std::string& path) {
  try {
    return Json::parse(ReadTextFile(path));
  } catch (const Json::parse_error& ex) {
    throw ForgeError(ErrorKind::kInvalidInput, path + ": " + ex.what());
  }
}

}  // namespace gapforge
