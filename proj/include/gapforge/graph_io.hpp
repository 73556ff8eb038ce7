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

#ifndef GAPFORGE_GRAPH_IO_HPP_
#define GAPFORGE_GRAPH_IO_HPP_

#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "gapforge/graph.hpp"

namespace gapforge {

using Json = nlohmann::json;

// {"n": int, "edges": [[u,v],...], "labels": {"id": "text"}}; edges in
// canonical order, empty labels omitted.
Json GraphToJson(const Graph& g);
Graph GraphFromJson(const Json& j);

Json TourToJson(const Tour& t);
Tour TourFromJson(const Json& j);

// Undirected DOT. Vertices in `highlight` are drawn as filled boxes.
std::string GraphToDot(const Graph& g, const std::string& name,
                       const std::set<Vertex>& highlight = {});

enum class TsplibWeights { kOneTwo, kHopMetric };

// TSPLIB EXPLICIT/FULL_MATRIX. Refuses graphs above `max_vertices`.
std::string GraphToTsplib(const Graph& g, const std::string& name,
                          TsplibWeights weights, int max_vertices = 1000);

// Reads back an EXPLICIT/FULL_MATRIX file written by GraphToTsplib and
// returns the weight-one graph. Only used to check round trips.
Graph GraphFromTsplib12(const std::string& text);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);
Json ReadJsonFile(const std::string& path);

}  // namespace gapforge

#endif  // GAPFORGE_GRAPH_IO_HPP_
