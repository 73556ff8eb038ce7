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

#ifndef GAPFORGE_LIN_SYSTEM_HPP_
#define GAPFORGE_LIN_SYSTEM_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace gapforge {

enum class EqKind { kThreeVar, kMatching, kCycle, kCycleBorder };

std::string_view ToString(EqKind kind);
EqKind EqKindFromString(std::string_view text);

// XOR over literals equals rhs; literal i is vars[i] xor neg[i].
struct Equation {
  std::vector<int> vars;
  std::vector<std::uint8_t> neg;
  int rhs = 0;
  EqKind kind = EqKind::kThreeVar;
};

struct LinSystem {
  int num_vars = 0;
  std::vector<Equation> equations;

  // Throws kInvalidInput: arity not 2 or 3, repeated or out-of-range
  // variables, rhs not a bit, negation vector of the wrong length.
  void Validate() const;

  int CountArity(int arity) const;
  // Number of equations each variable appears in.
  std::vector<int> Occurrences() const;
};

struct Assignment {
  std::vector<std::uint8_t> bits;
};

bool IsSatisfied(const Equation& eq, const Assignment& a);
int CountUnsatisfied(const LinSystem& sys, const Assignment& a);
int CountUnsatisfiedOfArity(const LinSystem& sys, const Assignment& a, int arity);

// {"vars": int, "eqs": [{"v": [..], "neg": [..], "rhs": 0|1, "kind": ".."}]}.
// "neg" and "kind" are optional on input (kind defaults by arity).
nlohmann::json LinSystemToJson(const LinSystem& sys);
LinSystem LinSystemFromJson(const nlohmann::json& j);

nlohmann::json AssignmentToJson(const Assignment& a);
Assignment AssignmentFromJson(const nlohmann::json& j);

}  // namespace gapforge

#endif  // GAPFORGE_LIN_SYSTEM_HPP_
