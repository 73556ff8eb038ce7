# Copyright 2026 The gapforge Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json

import pytest

import gapforge

E3 = {"vars": 3, "eqs": [{"v": [0, 1, 2], "rhs": 0}, {"v": [0, 1, 2], "neg": [0, 0, 1], "rhs": 0}]}


def direct_cost12(instance, order):
    edges = {tuple(e) for e in json.loads(instance.to_json())["graph"]["edges"]}
    n = len(order)
    return sum(1 if tuple(sorted((order[i], order[(i + 1) % n]))) in edges else 2 for i in range(n))


def test_hybrid_shape():
    h = gapforge.reduce_to_hybrid(E3)
    assert h["vars"] == 42
    assert sum(1 for e in h["eqs"] if len(e["v"]) == 2) == 60


@pytest.mark.parametrize("variant", ["max5", "subcubic", "cubic"])
def test_tour_cost_matches_ledger(variant):
    inst = gapforge.build_instance(gapforge.reduce_to_hybrid(E3), variant)
    base, correction = inst.ledger
    bits = inst.expand_wheel_bits([0, 0, 0])
    order, predicted = inst.assign_to_tour(bits)
    assert sorted(order) == list(range(inst.num_vertices))
    assert predicted == base + correction + inst.unsatisfied(bits)
    assert direct_cost12(inst, order) == predicted
    assert inst.tour_cost(order) == predicted


def test_round_trip():
    inst = gapforge.build_instance(gapforge.reduce_to_hybrid(E3), "gr-subcubic")
    bits = inst.expand_wheel_bits([1, 0, 1])
    order, _ = inst.assign_to_tour(bits)
    ex = gapforge.tour_to_assignment(inst, order)
    assert ex["unsatisfied"] <= inst.unsatisfied(bits)
    assert ex["repair_complete"]


def test_degree_profile():
    h = gapforge.reduce_to_hybrid(E3)
    assert gapforge.build_instance(h, "gr-cubic").degree_profile() == (3, 3, True)
    assert gapforge.build_instance(h, "max5").degree_profile()[0] == 5


def test_errors():
    with pytest.raises(gapforge.ForgeError):
        gapforge.reduce_to_hybrid({"vars": 2, "eqs": [{"v": [0, 1]}]})
    inst = gapforge.build_instance(gapforge.reduce_to_hybrid(E3), "subcubic")
    with pytest.raises(gapforge.ForgeError, match="must-be-consistent"):
        inst.assign_to_tour([1] + [0] * (inst.num_vars - 1))
    with pytest.raises(gapforge.ForgeError):
        gapforge.gap_report("subcubic", 0.6, 0.1)


def test_gap_and_oracles():
    assert abs(gapforge.gap_report("subcubic", 1e-4, 1e-4)["ratio"] - 673 / 672) < 1e-6
    star = gapforge.graph_json(4, [(0, 1), (0, 2), (0, 3)])
    assert gapforge.exact_tsp12(star)[0] == 6
    assert gapforge.exact_graphic_tsp(star) == 6
    tri = gapforge.graph_json(3, [(0, 1), (1, 2), (0, 2)])
    assert gapforge.enum_spanning_paths(tri, 0, 1) == [[0, 2, 1]]
    fast, slow = gapforge.check_amplifier(2, 7)
    assert fast == slow
    assert all(clean for _, clean in gapforge.verify_gadgets())


def test_instance_json_round_trip():
    inst = gapforge.build_instance(gapforge.reduce_to_hybrid(E3), "max5")
    back = gapforge.instance_from_json(inst.to_json())
    assert back.num_vertices == inst.num_vertices == 545
    assert "DIMENSION : 545" in back.export("tsplib")
