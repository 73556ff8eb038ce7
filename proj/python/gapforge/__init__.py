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

"""Bounded-degree TSP instances from mod-2 equation systems."""

import json

from ._gapforge import (
    ForgeError,
    Instance,
    check_amplifier,
    enum_spanning_paths as _enum_spanning_paths,
    exact_graphic_tsp as _exact_graphic_tsp,
    exact_tsp12 as _exact_tsp12,
    gap_report,
    variants,
    verify_gadgets,
)
from . import _gapforge

__all__ = [
    "ForgeError",
    "Instance",
    "build_instance",
    "check_amplifier",
    "enum_spanning_paths",
    "exact_graphic_tsp",
    "exact_tsp12",
    "gap_report",
    "graph_json",
    "instance_from_json",
    "make_consistent",
    "reduce_to_hybrid",
    "tour_to_assignment",
    "variants",
    "verify_gadgets",
]


def _dump(value):
    return value if isinstance(value, str) else json.dumps(value)


def reduce_to_hybrid(e3, b=0, k=1, seed=1):
    """E3 system (dict with "vars" and "eqs") to a hybrid instance dict."""
    return json.loads(_gapforge.reduce_to_hybrid(_dump(e3), b, k, seed))


def make_consistent(hybrid, bits):
    return _gapforge.make_consistent(_dump(hybrid), list(bits))


def build_instance(hybrid, variant="subcubic"):
    return _gapforge.build_instance(_dump(hybrid), variant)


def instance_from_json(data):
    return _gapforge.instance_from_json(_dump(data))


def tour_to_assignment(instance, order):
    return json.loads(instance.tour_to_assignment(list(order)))


def graph_json(num_vertices, edges):
    """Graph dict in the on-disk format."""
    return {"n": num_vertices, "edges": [list(e) for e in edges]}


def exact_tsp12(graph):
    return _exact_tsp12(_dump(graph))


def exact_graphic_tsp(graph):
    return _exact_graphic_tsp(_dump(graph))


def enum_spanning_paths(graph, source, target):
    return _enum_spanning_paths(_dump(graph), source, target)
