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

#include "gapforge/wheel.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "gapforge/error.hpp"

namespace gapforge {

std::vector<int> WheelAmplifier::Contacts() const {
  std::vector<int> out;
  for (int v = 7; v <= size(); v += 7) out.push_back(v);
  return out;
}

std::vector<std::pair<int, int>> WheelAmplifier::CycleEdges() const {
  std::vector<std::pair<int, int>> out;
  const int n = size();
  for (int v = 1; v < n; ++v) out.emplace_back(v, v + 1);
  if (n > 2) out.emplace_back(1, n);
  return out;
}

std::vector<int> WheelAmplifier::PartnerTable() const {
  std::vector<int> partner(size() + 1, 0);
  for (auto [a, b] : matching) {
    partner[a] = b;
    partner[b] = a;
  }
  return partner;
}

Graph WheelAmplifier::ToGraph() const {
  Graph g(size());
  for (auto [a, b] : CycleEdges()) g.AddEdge(a - 1, b - 1);
  for (auto [a, b] : matching) g.AddEdge(a - 1, b - 1);
  return g;
}

void WheelAmplifier::Validate() const {
  if (d < 1) throw ForgeError(ErrorKind::kInvalidInput, "wheel needs d >= 1");
  std::vector<int> hits(size() + 1, 0);
  for (auto [a, b] : matching) {
    if (a < 1 || b < 1 || a > size() || b > size() || a == b) {
      throw ForgeError(ErrorKind::kInvalidInput, "matching pair out of range");
    }
    if (IsContact(a) || IsContact(b)) {
      throw ForgeError(ErrorKind::kInvalidInput, "matching touches a contact");
    }
    ++hits[a];
    ++hits[b];
  }
  for (int v = 1; v <= size(); ++v) {
    if (!IsContact(v) && hits[v] != 1) {
      throw ForgeError(ErrorKind::kInvalidInput,
                       "checker " + std::to_string(v) + " is not matched exactly once");
    }
  }
}

WheelAmplifier BuildWheel(int d, std::uint64_t seed) {
  if (d < 1) throw ForgeError(ErrorKind::kInvalidParameter, "wheel needs d >= 1");
  WheelAmplifier w;
  w.d = d;
  std::vector<int> checkers;
  for (int v = 1; v <= w.size(); ++v) {
    if (!WheelAmplifier::IsContact(v)) checkers.push_back(v);
  }
  // Pairing consecutive entries of a uniform shuffle gives a uniform
  // perfect matching.
  std::mt19937_64 rng(seed);
  std::shuffle(checkers.begin(), checkers.end(), rng);
  for (size_t i = 0; i + 1 < checkers.size(); i += 2) {
    w.matching.emplace_back(std::min(checkers[i], checkers[i + 1]),
                            std::max(checkers[i], checkers[i + 1]));
  }
  std::sort(w.matching.begin(), w.matching.end());
  return w;
}

namespace {

struct WheelBits {
  int n = 0;
  std::vector<std::uint32_t> nbr_mask;  // bit j set when j adjacent to i
  std::uint32_t contacts = 0;
  int num_contacts = 0;
};

WheelBits MakeBits(const WheelAmplifier& w) {
  WheelBits b;
  b.n = w.size();
  b.nbr_mask.assign(b.n, 0);
  auto add = [&](int x, int y) {
    b.nbr_mask[x - 1] |= 1u << (y - 1);
    b.nbr_mask[y - 1] |= 1u << (x - 1);
  };
  for (auto [x, y] : w.CycleEdges()) add(x, y);
  for (auto [x, y] : w.matching) add(x, y);
  for (int c : w.Contacts()) b.contacts |= 1u << (c - 1);
  b.num_contacts = w.d;
  return b;
}

std::vector<int> MaskToVertices(std::uint64_t mask, int n) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if (mask >> v & 1) out.push_back(v + 1);
  }
  return out;
}

// Cut size and contact count for an arbitrary subset given as a bool vector.
bool ViolatesSubset(const WheelAmplifier& w, const std::vector<char>& in_u) {
  int cut = 0;
  for (auto [x, y] : w.CycleEdges()) cut += in_u[x] != in_u[y];
  for (auto [x, y] : w.matching) cut += in_u[x] != in_u[y];
  int inside = 0;
  for (int c : w.Contacts()) inside += in_u[c];
  return cut < std::min(inside, w.d - inside);
}

}  // namespace

AmplifierVerdict CheckAmplifier(const WheelAmplifier& w, const AmplifierCheckOptions& options) {
  w.Validate();
  AmplifierVerdict verdict;
  const int n = w.size();
  if (n <= options.exhaustive_bound && n <= 30) {
    // Gray-code walk: flipping one vertex per step updates the cut in O(1).
    const WheelBits b = MakeBits(w);
    std::uint32_t mask = 0;
    int cut = 0;
    int inside = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    const std::uint32_t full = static_cast<std::uint32_t>(total - 1);
    for (std::uint64_t step = 1; step < total; ++step) {
      const int v = std::countr_zero(step);
      const std::uint32_t bit = 1u << v;
      const int nbrs_in = std::popcount(b.nbr_mask[v] & mask);
      const int deg = std::popcount(b.nbr_mask[v]);
      if (mask & bit) {
        cut += 2 * nbrs_in - deg;
        mask &= ~bit;
        if (b.contacts & bit) --inside;
      } else {
        cut += deg - 2 * nbrs_in;
        mask |= bit;
        if (b.contacts & bit) ++inside;
      }
      if (mask == full) continue;
      ++verdict.subsets_checked;
      if (cut < std::min(inside, b.num_contacts - inside)) {
        verdict.holds = false;
        verdict.witness = MaskToVertices(mask, n);
        return verdict;
      }
    }
    return verdict;
  }
  verdict.sampled = true;
  std::mt19937_64 rng(options.seed);
  std::vector<char> in_u(n + 1, 0);
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    // Alternate uniform subsets with cycle arcs, which have small cuts.
    if (s % 2 == 0) {
      for (int v = 1; v <= n; ++v) in_u[v] = static_cast<char>(rng() & 1);
    } else {
      std::fill(in_u.begin(), in_u.end(), 0);
      const int start = static_cast<int>(rng() % n);
      const int len = 1 + static_cast<int>(rng() % (n - 1));
      for (int i = 0; i < len; ++i) in_u[1 + (start + i) % n] = 1;
    }
    const int count = static_cast<int>(std::count(in_u.begin() + 1, in_u.end(), 1));
    if (count == 0 || count == n) continue;
    ++verdict.subsets_checked;
    if (ViolatesSubset(w, in_u)) {
      verdict.holds = false;
      for (int v = 1; v <= n; ++v) {
        if (in_u[v]) verdict.witness.push_back(v);
      }
      return verdict;
    }
  }
  return verdict;
}

std::pair<WheelAmplifier, bool> BuildCheckedWheel(int d, std::uint64_t seed, int max_draws,
                                                  const AmplifierCheckOptions& options) {
  std::mt19937_64 seeder(seed);
  WheelAmplifier w;
  for (int draw = 0; draw < std::max(1, max_draws); ++draw) {
    w = BuildWheel(d, draw == 0 ? seed : seeder());
    if (CheckAmplifier(w, options).holds) return {w, true};
  }
  return {w, false};
}

nlohmann::json WheelToJson(const WheelAmplifier& w) {
  nlohmann::json m = nlohmann::json::array();
  for (auto [a, b] : w.matching) m.push_back({a, b});
  return {{"d", w.d}, {"matching", m}};
}

WheelAmplifier WheelFromJson(const nlohmann::json& j) {
  try {
    WheelAmplifier w;
    w.d = j.at("d").get<int>();
    for (const auto& p : j.at("matching")) {
      const int a = p.at(0).get<int>();
      const int b = p.at(1).get<int>();
      w.matching.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(w.matching.begin(), w.matching.end());
    w.Validate();
    return w;
  } catch (const nlohmann::json::exception& ex) {
    throw ForgeError(ErrorKind::kInvalidInput, std::string("wheel json: ") + ex.what());
  }
}

}  // namespace gapforge
