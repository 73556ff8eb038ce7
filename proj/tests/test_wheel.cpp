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

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "gapforge/error.hpp"
#include "gapforge/oracles.hpp"
#include "gapforge/wheel.hpp"
#include "local_oracles.hpp"

namespace gapforge {
namespace {

TEST(Wheel, ShapeD1) {
  const WheelAmplifier w = BuildWheel(1, 42);
  EXPECT_EQ(w.size(), 7);
  EXPECT_EQ(w.Contacts(), std::vector<int>{7});
  ASSERT_EQ(w.matching.size(), 3u);
  std::set<int> covered;
  for (auto [a, b] : w.matching) {
    EXPECT_LT(a, b);
    covered.insert(a);
    covered.insert(b);
  }
  EXPECT_EQ(covered, (std::set<int>{1, 2, 3, 4, 5, 6}));
}

TEST(Wheel, ShapeD2AndDegrees) {
  const WheelAmplifier w = BuildWheel(2, 3);
  EXPECT_EQ(w.size(), 14);
  EXPECT_EQ(w.Contacts(), (std::vector<int>{7, 14}));
  EXPECT_EQ(w.matching.size(), 6u);
  const Graph g = w.ToGraph();
  for (int v = 1; v <= 14; ++v) EXPECT_EQ(g.Degree(v - 1), v % 7 == 0 ? 2 : 3) << v;
  EXPECT_NO_THROW(w.Validate());
}

TEST(Wheel, ValidateRejectsContactInMatching) {
  WheelAmplifier w = BuildWheel(1, 1);
  w.matching[0] = {1, 7};
  EXPECT_THROW(w.Validate(), ForgeError);
}

// The 15 perfect matchings of six checkers should come up about equally
// often; chi-square with 14 degrees of freedom, 99.9% quantile 36.12.
TEST(Wheel, MatchingDistributionUniform) {
  std::map<std::vector<std::pair<int, int>>, int> counts;
  const int samples = 15000;
  for (int s = 0; s < samples; ++s) ++counts[BuildWheel(1, s).matching];
  ASSERT_EQ(counts.size(), 15u);
  double chi2 = 0;
  const double expected = samples / 15.0;
  for (const auto& [m, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 36.12);
}

TEST(Amplifier, FixedD1MatchesOracle) {
  WheelAmplifier w;
  w.d = 1;
  w.matching = {{1, 2}, {3, 4}, {5, 6}};
  const bool expect = local::AmplifierHolds(7, w.matching);
  const AmplifierVerdict v = CheckAmplifier(w, {});
  EXPECT_EQ(v.holds, expect);
  EXPECT_FALSE(v.sampled);
  EXPECT_EQ(v.subsets_checked, (1u << 7) - 2);
  EXPECT_EQ(ExhaustiveSubsets(w).holds, expect);
}

TEST(Amplifier, AgreesWithOracleOnRandomWheels) {
  for (int d = 1; d <= 2; ++d) {
    for (int s = 0; s < 10; ++s) {
      const WheelAmplifier w = BuildWheel(d, 100 + s);
      const bool expect = local::AmplifierHolds(w.size(), w.matching);
      EXPECT_EQ(CheckAmplifier(w, {}).holds, expect);
      EXPECT_EQ(ExhaustiveSubsets(w).holds, expect);
    }
  }
}

TEST(Amplifier, WitnessViolates) {
  // Checkers of each half matched among themselves: the half-arc holding
  // three contacts is cut by only two cycle edges.
  WheelAmplifier w;
  w.d = 6;
  for (int lo : {1, 22}) {
    std::vector<int> side;
    for (int v = lo; v < lo + 21; ++v) {
      if (!WheelAmplifier::IsContact(v)) side.push_back(v);
    }
    for (size_t i = 0; i + 1 < side.size(); i += 2) w.matching.emplace_back(side[i], side[i + 1]);
  }
  const AmplifierVerdict v = CheckAmplifier(w, {});
  ASSERT_FALSE(v.holds);
  EXPECT_TRUE(v.sampled);
  std::set<int> u(v.witness.begin(), v.witness.end());
  int cut = 0;
  for (auto [a, b] : w.CycleEdges()) cut += u.count(a) != u.count(b);
  for (auto [a, b] : w.matching) cut += u.count(a) != u.count(b);
  int inside = 0;
  for (int c : w.Contacts()) inside += static_cast<int>(u.count(c));
  EXPECT_LT(cut, std::min(inside, 6 - inside));
}

TEST(Amplifier, SampledForLargeWheels) {
  const WheelAmplifier w = BuildWheel(4, 9);
  AmplifierCheckOptions opt;
  opt.samples = 2000;
  const AmplifierVerdict v = CheckAmplifier(w, opt);
  EXPECT_TRUE(v.sampled);
  EXPECT_THROW(ExhaustiveSubsets(w), ForgeError);
}

TEST(Amplifier, CheckedWheelHolds) {
  const auto [w, ok] = BuildCheckedWheel(2, 5, 100, {});
  EXPECT_TRUE(ok);
  EXPECT_TRUE(local::AmplifierHolds(w.size(), w.matching));
}

TEST(Wheel, JsonRoundTrip) {
  const WheelAmplifier w = BuildWheel(2, 11);
  const WheelAmplifier back = WheelFromJson(WheelToJson(w));
  EXPECT_EQ(back.d, w.d);
  EXPECT_EQ(back.matching, w.matching);
}

}  // namespace
}  // namespace gapforge
