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

#include "gapforge/lin_system.hpp"

#include <algorithm>

#include "gapforge/error.hpp"

namespace gapforge {

std::string_view ToString(EqKind kind) {
  switch (kind) {
    case EqKind::kThreeVar: return "three-var";
    case EqKind::kMatching: return "matching";
    case EqKind::kCycle: return "cycle";
    case EqKind::kCycleBorder: return "cycle-border";
  }
  return "three-var";
}

EqKind EqKindFromString(std::string_view text) {
  if (text == "three-var") return EqKind::kThreeVar;
  if (text == "matching") return EqKind::kMatching;
  if (text == "cycle") return EqKind::kCycle;
  if (text == "cycle-border") return EqKind::kCycleBorder;
  throw ForgeError(ErrorKind::kInvalidInput, "unknown equation kind '" + std::string(text) + "'");
}

void LinSystem::Validate() const {
  if (num_vars < 0) throw ForgeError(ErrorKind::kInvalidInput, "negative variable count");
  for (size_t i = 0; i < equations.size(); ++i) {
    const Equation& eq = equations[i];
    const std::string where = "equation " + std::to_string(i) + ": ";
    if (eq.vars.size() != 2 && eq.vars.size() != 3) {
      throw ForgeError(ErrorKind::kInvalidInput, where + "needs 2 or 3 variables");
    }
    if (eq.neg.size() != eq.vars.size()) {
      throw ForgeError(ErrorKind::kInvalidInput, where + "negation flags do not match arity");
    }
    if (eq.rhs != 0 && eq.rhs != 1) {
      throw ForgeError(ErrorKind::kInvalidInput, where + "rhs must be 0 or 1");
    }
    for (size_t a = 0; a < eq.vars.size(); ++a) {
      if (eq.vars[a] < 0 || eq.vars[a] >= num_vars) {
        throw ForgeError(ErrorKind::kInvalidInput, where + "variable out of range");
      }
      for (size_t b = a + 1; b < eq.vars.size(); ++b) {
        if (eq.vars[a] == eq.vars[b]) {
          throw ForgeError(ErrorKind::kInvalidInput, where + "variables must be distinct");
        }
      }
    }
  }
}

int LinSystem::CountArity(int arity) const {
  return static_cast<int>(std::count_if(equations.begin(), equations.end(), [&](const Equation& e) {
    return static_cast<int>(e.vars.size()) == arity;
  }));
}

std::vector<int> LinSystem::Occurrences() const {
  std::vector<int> occ(num_vars, 0);
  for (const Equation& eq : equations) {
    for (int v : eq.vars) ++occ[v];
  }
  return occ;
}

bool IsSatisfied(const Equation& eq, const Assignment& a) {
  int sum = 0;
  for (size_t i = 0; i < eq.vars.size(); ++i) sum ^= (a.bits[eq.vars[i]] & 1) ^ (eq.neg[i] & 1);
  return sum == eq.rhs;
}

namespace {

void CheckTotal(const LinSystem& sys, const Assignment& a) {
  if (static_cast<int>(a.bits.size()) != sys.num_vars) {
    throw ForgeError(ErrorKind::kInvalidInput,
                     "assignment has " + std::to_string(a.bits.size()) + " bits for " +
                         std::to_string(sys.num_vars) + " variables");
  }
}

}  // namespace

int CountUnsatisfied(const LinSystem& sys, const Assignment& a) {
  CheckTotal(sys, a);
  int bad = 0;
  for (const Equation& eq : sys.equations) bad += !IsSatisfied(eq, a);
  return bad;
}

int CountUnsatisfiedOfArity(const LinSystem& sys, const Assignment& a, int arity) {
  CheckTotal(sys, a);
  int bad = 0;
  for (const Equation& eq : sys.equations) {
    if (static_cast<int>(eq.vars.size()) == arity) bad += !IsSatisfied(eq, a);
  }
  return bad;
}

nlohmann::json LinSystemToJson(const LinSystem& sys) {
  nlohmann::json eqs = nlohmann::json::array();
  for (const Equation& eq : sys.equations) {
    std::vector<int> neg(eq.neg.begin(), eq.neg.end());
    eqs.push_back({{"v", eq.vars}, {"neg", neg}, {"rhs", eq.rhs}, {"kind", ToString(eq.kind)}});
  }
  return {{"vars", sys.num_vars}, {"eqs", eqs}};
}

LinSystem LinSystemFromJson(const nlohmann::json& j) {
  try {
    LinSystem sys;
    sys.num_vars = j.at("vars").get<int>();
    for (const auto& e : j.at("eqs")) {
      Equation eq;
      eq.vars = e.at("v").get<std::vector<int>>();
      if (e.contains("neg")) {
        for (int f : e.at("neg").get<std::vector<int>>()) eq.neg.push_back(f ? 1 : 0);
      } else {
        eq.neg.assign(eq.vars.size(), 0);
      }
      eq.rhs = e.value("rhs", 0);
      if (e.contains("kind")) {
        eq.kind = EqKindFromString(e.at("kind").get<std::string>());
      } else {
        eq.kind = eq.vars.size() == 3 ? EqKind::kThreeVar : EqKind::kMatching;
      }
      sys.equations.push_back(std::move(eq));
    }
    sys.Validate();
    return sys;
  } catch (const nlohmann::json::exception& ex) {
    throw ForgeError(ErrorKind::kInvalidInput, std::string("linear system json: ") + ex.what());
  }
}

nlohmann::json AssignmentToJson(const Assignment& a) {
  return {{"bits", std::vector<int>(a.bits.begin(), a.bits.end())}};
}

Assignment AssignmentFromJson(const nlohmann::json& j) {
  try {
    Assignment a;
    for (int b : j.at("bits").get<std::vector<int>>()) {
      if (b != 0 && b != 1) throw ForgeError(ErrorKind::kInvalidInput, "bits must be 0 or 1");
      a.bits.push_back(static_cast<std::uint8_t>(b));
    }
    return a;
  } catch (const nlohmann::json::exception& ex) {
    throw ForgeError(ErrorKind::kInvalidInput, std::string("assignment json: ") + ex.what());
  }
}

}  // namespace gapforge
