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

#include "gapforge/hybrid.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "gapforge/error.hpp"

namespace gapforge {

void HybridInstance::Validate() const {
  auto fail = [](const std::string& msg) { throw ForgeError(ErrorKind::kBuildError, msg); };
  system.Validate();
  if (wheel_offset.size() != wheels.size() || source_var.size() != wheels.size()) {
    fail("wheel tables have mismatched lengths");
  }
  if (contacts.size() != three_var.size()) fail("contact map does not cover all equations");
  int expected_offset = 0;
  for (int w = 0; w < num_wheels(); ++w) {
    wheels[w].Validate();
    if (wheel_offset[w] != expected_offset) fail("wheel variables are not contiguous");
    expected_offset += wheels[w].size();
  }
  if (expected_offset != system.num_vars) fail("wheel sizes do not add up to the variable count");
  std::vector<std::vector<char>> used(num_wheels());
  for (int w = 0; w < num_wheels(); ++w) used[w].assign(wheels[w].d + 1, 0);
  for (int e = 0; e < num_three_var(); ++e) {
    const int idx = three_var[e];
    if (idx < 0 || idx >= static_cast<int>(system.equations.size())) fail("bad equation index");
    const Equation& eq = system.equations[idx];
    if (eq.vars.size() != 3 || contacts[e].size() != 3) fail("three-var entry is not ternary");
    for (int p = 0; p < 3; ++p) {
      const ContactRef& c = contacts[e][p];
      if (c.wheel < 0 || c.wheel >= num_wheels()) fail("contact names an unknown wheel");
      if (c.contact_index < 1 || c.contact_index > wheels[c.wheel].d) fail("contact index out of range");
      if (c.equation != e || c.position != p) fail("contact back-reference mismatch");
      if (VarOf(c.wheel, 7 * c.contact_index) != eq.vars[p]) {
        fail("contact variable disagrees with equation " + std::to_string(idx));
      }
      if (used[c.wheel][c.contact_index]) fail("contact used twice");
      used[c.wheel][c.contact_index] = 1;
    }
  }
  for (int w = 0; w < num_wheels(); ++w) {
    for (int j = 1; j <= wheels[w].d; ++j) {
      if (!used[w][j]) fail("contact without an equation");
    }
  }
}

namespace {

void AppendWheelEquations(const WheelAmplifier& w, int offset, LinSystem& sys) {
  for (auto [a, b] : w.CycleEdges()) {
    Equation eq;
    eq.vars = {offset + a - 1, offset + b - 1};
    eq.neg = {0, 0};
    eq.kind = (a == 1 && b == 2) ? EqKind::kCycleBorder : EqKind::kCycle;
    sys.equations.push_back(eq);
  }
  for (auto [a, b] : w.matching) {
    Equation eq;
    eq.vars = {offset + a - 1, offset + b - 1};
    eq.neg = {0, 0};
    eq.kind = EqKind::kMatching;
    sys.equations.push_back(eq);
  }
}

}  // namespace

HybridInstance ReduceToHybrid(const LinSystem& e3, int b, int k, const ReduceOptions& options) {
  if (b != 0 && b != 1) throw ForgeError(ErrorKind::kInvalidParameter, "b must be 0 or 1");
  if (k < 1) throw ForgeError(ErrorKind::kInvalidParameter, "copies k must be >= 1");
  e3.Validate();
  if (e3.equations.empty()) throw ForgeError(ErrorKind::kInvalidInput, "empty equation system");
  for (size_t i = 0; i < e3.equations.size(); ++i) {
    if (e3.equations[i].vars.size() != 3) {
      throw ForgeError(ErrorKind::kInvalidInput,
                       "equation " + std::to_string(i) + " does not have exactly 3 literals");
    }
  }

  std::vector<Equation> dup;
  for (const Equation& eq : e3.equations) {
    for (int c = 0; c < k; ++c) dup.push_back(eq);
  }

  // One wheel per variable that occurs; wheels in increasing variable order.
  std::vector<int> occ(e3.num_vars, 0);
  for (const Equation& eq : dup) {
    for (int v : eq.vars) ++occ[v];
  }
  HybridInstance h;
  h.rhs = b;
  std::vector<int> wheel_of(e3.num_vars, -1);
  std::mt19937_64 seeder(options.seed);
  int offset = 0;
  for (int v = 0; v < e3.num_vars; ++v) {
    if (occ[v] == 0) {
      h.warnings.push_back("variable " + std::to_string(v) + " has no occurrences; dropped");
      continue;
    }
    wheel_of[v] = h.num_wheels();
    const std::uint64_t wheel_seed = seeder();
    auto [wheel, ok] = BuildCheckedWheel(occ[v], wheel_seed, options.max_draws, options.check);
    if (!ok && options.max_draws > 1) {
      h.warnings.push_back("wheel for variable " + std::to_string(v) +
                           " failed the amplifier check on every draw");
    }
    h.wheels.push_back(wheel);
    h.wheel_offset.push_back(offset);
    h.source_var.push_back(v);
    offset += wheel.size();
  }
  h.system.num_vars = offset;
  for (int w = 0; w < h.num_wheels(); ++w) AppendWheelEquations(h.wheels[w], h.wheel_offset[w], h.system);

  // The j-th occurrence of a variable moves onto contact 7j of its wheel.
  std::vector<int> next_contact(h.num_wheels(), 1);
  for (const Equation& src : dup) {
    Equation eq = src;
    eq.kind = EqKind::kThreeVar;
    if (eq.rhs != b) {
      eq.neg[0] ^= 1;
      eq.rhs = b;
    }
    const int e = h.num_three_var();
    std::vector<ContactRef> refs;
    for (int p = 0; p < 3; ++p) {
      const int w = wheel_of[src.vars[p]];
      const int j = next_contact[w]++;
      eq.vars[p] = h.VarOf(w, 7 * j);
      refs.push_back({w, j, e, p});
    }
    h.three_var.push_back(static_cast<int>(h.system.equations.size()));
    h.system.equations.push_back(eq);
    h.contacts.push_back(refs);
  }
  h.Validate();
  return h;
}

bool IsConsistent(const HybridInstance& h, const Assignment& a) {
  if (static_cast<int>(a.bits.size()) != h.system.num_vars) return false;
  for (int w = 0; w < h.num_wheels(); ++w) {
    const auto first = a.bits.begin() + h.wheel_offset[w];
    const auto last = first + h.wheels[w].size();
    if (std::any_of(first, last, [&](std::uint8_t bit) { return bit != *first; })) return false;
  }
  return true;
}

Assignment MakeConsistent(const HybridInstance& h, const Assignment& a) {
  if (static_cast<int>(a.bits.size()) != h.system.num_vars) {
    throw ForgeError(ErrorKind::kInvalidInput, "assignment length does not match the instance");
  }
  std::vector<std::uint8_t> wheel_bits(h.num_wheels(), 0);
  for (int w = 0; w < h.num_wheels(); ++w) {
    int ones = 0;
    for (int c : h.wheels[w].Contacts()) ones += a.bits[h.VarOf(w, c)] & 1;
    wheel_bits[w] = 2 * ones > h.wheels[w].d ? 1 : 0;
  }
  return ExpandWheelBits(h, wheel_bits);
}

Assignment ExpandWheelBits(const HybridInstance& h, const std::vector<std::uint8_t>& wheel_bits) {
  if (static_cast<int>(wheel_bits.size()) != h.num_wheels()) {
    throw ForgeError(ErrorKind::kInvalidInput, "need one bit per wheel");
  }
  Assignment out;
  out.bits.assign(h.system.num_vars, 0);
  for (int w = 0; w < h.num_wheels(); ++w) {
    std::fill_n(out.bits.begin() + h.wheel_offset[w], h.wheels[w].size(), wheel_bits[w] & 1);
  }
  return out;
}

std::vector<std::uint8_t> WheelBits(const HybridInstance& h, const Assignment& a) {
  std::vector<std::uint8_t> out;
  for (int w = 0; w < h.num_wheels(); ++w) out.push_back(a.bits.at(h.wheel_offset[w]));
  return out;
}

nlohmann::json HybridToJson(const HybridInstance& h) {
  nlohmann::json j = LinSystemToJson(h.system);
  nlohmann::json wheels = nlohmann::json::array();
  for (int w = 0; w < h.num_wheels(); ++w) {
    nlohmann::json wj = WheelToJson(h.wheels[w]);
    wj["offset"] = h.wheel_offset[w];
    wj["source"] = h.source_var[w];
    wheels.push_back(wj);
  }
  nlohmann::json contacts = nlohmann::json::array();
  for (int e = 0; e < h.num_three_var(); ++e) {
    nlohmann::json row = nlohmann::json::array();
    for (const ContactRef& c : h.contacts[e]) row.push_back({c.wheel, c.contact_index});
    contacts.push_back({{"eq", h.three_var[e]}, {"contacts", row}});
  }
  j["wheels"] = wheels;
  j["three_var"] = contacts;
  j["b"] = h.rhs;
  return j;
}

HybridInstance HybridFromJson(const nlohmann::json& j) {
  try {
    HybridInstance h;
    h.system = LinSystemFromJson(j);
    h.rhs = j.value("b", 0);
    for (const auto& wj : j.at("wheels")) {
      h.wheels.push_back(WheelFromJson(wj));
      h.wheel_offset.push_back(wj.at("offset").get<int>());
      h.source_var.push_back(wj.value("source", h.num_wheels() - 1));
    }
    for (const auto& ej : j.at("three_var")) {
      const int e = h.num_three_var();
      h.three_var.push_back(ej.at("eq").get<int>());
      std::vector<ContactRef> refs;
      int p = 0;
      for (const auto& c : ej.at("contacts")) {
        refs.push_back({c.at(0).get<int>(), c.at(1).get<int>(), e, p++});
      }
      h.contacts.push_back(refs);
    }
    h.Validate();
    // Two-variable equations must be exactly what the wheels imply.
    LinSystem expected;
    expected.num_vars = h.system.num_vars;
    for (int w = 0; w < h.num_wheels(); ++w) AppendWheelEquations(h.wheels[w], h.wheel_offset[w], expected);
    std::vector<std::pair<std::vector<int>, EqKind>> have, want;
    for (const Equation& eq : h.system.equations) {
      if (eq.vars.size() == 2) {
        if (eq.rhs != 0 || eq.neg[0] || eq.neg[1]) {
          throw ForgeError(ErrorKind::kBuildError, "two-variable equations must be plain x+y=0");
        }
        have.emplace_back(eq.vars, eq.kind);
      }
    }
    for (const Equation& eq : expected.equations) want.emplace_back(eq.vars, eq.kind);
    std::sort(have.begin(), have.end());
    std::sort(want.begin(), want.end());
    if (have != want) throw ForgeError(ErrorKind::kBuildError, "two-variable equations do not match the wheels");
    for (int idx : h.three_var) {
      if (h.system.equations[idx].rhs != h.rhs) {
        throw ForgeError(ErrorKind::kBuildError, "three-var equation rhs differs from b");
      }
    }
    if (h.system.CountArity(3) != h.num_three_var()) {
      throw ForgeError(ErrorKind::kBuildError, "three-var equation list is incomplete");
    }
    return h;
  } catch (const nlohmann::json::exception& ex) {
    throw ForgeError(ErrorKind::kInvalidInput, std::string("hybrid json: ") + ex.what());
  }
}

}  // namespace gapforge
