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

#ifndef GAPFORGE_WHEEL_HPP_
#define GAPFORGE_WHEEL_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gapforge/graph.hpp"

namespace gapforge {

// Cycle 1-2-...-7d-1 plus a perfect matching on the vertices whose number
// is not a multiple of 7. Vertex numbers are 1-based; the multiples of 7
// are the contacts.
struct WheelAmplifier {
  int d = 0;
  std::vector<std::pair<int, int>> matching;  // each pair has first < second

  int size() const { return 7 * d; }
  static bool IsContact(int v) { return v % 7 == 0; }
  std::vector<int> Contacts() const;
  std::vector<std::pair<int, int>> CycleEdges() const;
  // Partner of checker v in the matching, 0 for contacts.
  std::vector<int> PartnerTable() const;
  // Vertex v becomes id v-1.
  Graph ToGraph() const;

  // Throws kInvalidInput unless the matching covers every checker once.
  void Validate() const;
};

WheelAmplifier BuildWheel(int d, std::uint64_t seed);

struct AmplifierVerdict {
  bool holds = true;
  bool sampled = false;  // true when only a random sample of subsets was tried
  std::vector<int> witness;  // violating U (1-based), empty when holds
  std::uint64_t subsets_checked = 0;
};

struct AmplifierCheckOptions {
  int exhaustive_bound = 21;
  std::uint64_t samples = 200000;
  std::uint64_t seed = 1;
};

// |E(U, V\U)| >= min(|U cap X|, |X \ U|) for every non-empty proper U.
AmplifierVerdict CheckAmplifier(const WheelAmplifier& w,
                                const AmplifierCheckOptions& options = {});

// Redraws the matching until CheckAmplifier holds, at most `max_draws`
// times. Returns the last draw and whether it passed.
std::pair<WheelAmplifier, bool> BuildCheckedWheel(int d, std::uint64_t seed, int max_draws,
                                                  const AmplifierCheckOptions& options = {});

nlohmann::json WheelToJson(const WheelAmplifier& w);
WheelAmplifier WheelFromJson(const nlohmann::json& j);

}  // namespace gapforge

#endif  // GAPFORGE_WHEEL_HPP_
