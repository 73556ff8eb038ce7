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

"""End-to-end checks of the forge binary: exit codes and key outputs."""

import json
import os
import subprocess
import sys
import tempfile

FORGE = sys.argv[1]
failures = []


def run(*args):
    return subprocess.run([FORGE, *args], capture_output=True, text=True)


def expect(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


with tempfile.TemporaryDirectory() as tmp:
    def path(name):
        return os.path.join(tmp, name)

    with open(path("e3.json"), "w") as f:
        json.dump({"vars": 3, "eqs": [{"v": [0, 1, 2], "rhs": 0}, {"v": [0, 1, 2], "rhs": 0}]}, f)
    with open(path("bad.json"), "w") as f:
        json.dump({"vars": 3, "eqs": [{"v": [0, 1], "rhs": 0}]}, f)

    r = run("pipeline", "--in", path("e3.json"), "--all-zero")
    expect(r.returncode == 0 and json.loads(r.stdout)["tour_cost"] == 683, "pipeline subcubic all-zero costs 683")

    r = run("pipeline", "--in", path("bad.json"), "--all-zero")
    expect(r.returncode == 2 and "reduce_to_hybrid" in r.stderr, "malformed input exits 2 at reduce_to_hybrid")

    r = run("pipeline", "--in", path("e3.json"), "--all-zero", "--out", path("bundle"))
    expect(r.returncode == 0 and os.path.exists(path("bundle/manifest.json")), "pipeline writes a bundle")

    r = run("gen-hybrid", "--in", path("e3.json"), "--seed", "3", "--out", path("h.json"))
    expect(r.returncode == 0, "gen-hybrid")
    r = run("build", "--variant", "gr-subcubic", "--in", path("h.json"), "--out", path("inst.json"))
    expect(r.returncode == 0, "build")
    with open(path("h.json")) as f:
        n = json.load(f)["vars"]
    with open(path("a.json"), "w") as f:
        json.dump({"bits": [0] * n}, f)
    r = run("tour", "--in", path("inst.json"), "--assign", path("a.json"), "--out", path("t.json"))
    expect(r.returncode == 0 and "cost 695 predicted 695" in r.stderr, "tour meets the ledger")
    r = run("extract", "--in", path("inst.json"), "--tour", path("t.json"))
    expect(r.returncode == 0 and json.loads(r.stdout)["unsatisfied"] == 0, "extract round trip")

    with open(path("a.json"), "w") as f:
        json.dump({"bits": [1] + [0] * (n - 1)}, f)
    r = run("tour", "--in", path("inst.json"), "--assign", path("a.json"))
    expect(r.returncode == 2 and "must-be-consistent" in r.stderr, "inconsistent assignment rejected")

    outs = []
    for name in ("x1.tsp", "x2.tsp"):
        r = run("export", "--in", path("inst.json"), "--format", "tsplib", "--out", path(name))
        with open(path(name)) as f:
            outs.append(f.read())
    expect(outs[0] == outs[1] and "DIMENSION : 695" in outs[0], "tsplib export is stable")

    r = run("gap", "--variant", "all")
    rows = json.loads(r.stdout)
    expect(r.returncode == 0 and all(row["error"] < 1e-6 for row in rows), "gap limits within 1e-6")
    r = run("gap", "--eps", "0.7")
    expect(r.returncode == 2 and "invalid-parameter" in r.stderr, "bad epsilon rejected")

    with open(path("tri.json"), "w") as f:
        json.dump({"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}, f)
    r = run("oracle", "graphic", "--in", path("tri.json"))
    expect(r.returncode == 0 and json.loads(r.stdout)["cost"] == 3, "oracle graphic triangle")
    r = run("oracle", "paths", "--in", path("tri.json"), "--from", "0", "--to", "1")
    expect(r.returncode == 0 and json.loads(r.stdout)["count"] == 1, "oracle paths triangle")
    r = run("oracle", "amplifier", "--d", "2", "--seed", "4")
    expect(r.returncode == 0 and json.loads(r.stdout)["agree"], "oracle amplifier agreement")

    r = run("verify", "--quick")
    expect(r.returncode == 0 and json.loads(r.stdout)["ok"], "verify --quick passes")

sys.exit(1 if failures else 0)
