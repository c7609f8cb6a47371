# Copyright 2026 The abdyn Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the abdyn binary: outputs, exit codes, schemas."""

import json
import pathlib
import subprocess
import sys
import unittest

import jsonschema
import referencing

BINARY = sys.argv.pop(1)
SCHEMAS = pathlib.Path(sys.argv.pop(1))

_resources = []
for p in SCHEMAS.glob("*.json"):
    doc = json.loads(p.read_text())
    _resources.append((doc["$id"], referencing.Resource.from_contents(doc)))
REGISTRY = referencing.Registry().with_resources(_resources)


def validate(instance, schema_id, pointer=""):
    schema = {"$ref": schema_id + ("#" + pointer if pointer else "")}
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(instance)


def run(args, payload=None):
    stdin = json.dumps(payload) if isinstance(payload, (dict, list)) else payload
    proc = subprocess.run([BINARY, *args], input=stdin or "", capture_output=True, text=True, timeout=120)
    return proc


def ok(args, payload=None):
    proc = run(args, payload)
    if proc.returncode != 0:
        raise AssertionError(f"{args} exited {proc.returncode}: {proc.stderr}")
    doc = json.loads(proc.stdout)
    validate(doc, "envelope.schema.json")
    return doc


class Analyze(unittest.TestCase):
    def test_torus_profile(self):
        doc = ok(["analyze"], {"u_T": [[2, 1], [1, 1]]})
        validate(doc["input"], "analyze.request.schema.json")
        validate(doc["result"], "analyze.result.schema.json")
        lam = doc["result"]["degrees"]["lambdas"]
        self.assertEqual(len(lam), 3)
        self.assertAlmostEqual(lam[0], 1.0)
        self.assertAlmostEqual(lam[1], 2.6180339887, places=9)
        self.assertAlmostEqual(lam[2], 1.0)

    def test_identity_all_ones(self):
        doc = ok(["analyze", "--fit"], {"u_T": [[1, 0], [0, 1]], "u_A_rat": [[1, 0], [0, 1]]})
        validate(doc["result"], "analyze.result.schema.json")
        self.assertEqual(doc["result"]["degrees"]["lambdas"], [1.0] * 4)

    def test_malformed_json(self):
        proc = run(["analyze"], '{"u_T": [[2,1],')
        self.assertEqual(proc.returncode, 2)
        validate(json.loads(proc.stderr), "error.schema.json")

    def test_schema_error(self):
        self.assertEqual(run(["analyze"], {"u_T": [["x"]]}).returncode, 2)
        self.assertEqual(run(["analyze"], {"nothing": 1}).returncode, 2)

    def test_contract_error(self):
        proc = run(["analyze"], {"u_T": [[2, 0], [0, 1]]})
        self.assertEqual(proc.returncode, 3)


class Decide(unittest.TestCase):
    def verdict(self, payload):
        doc = ok(["decide"], payload)
        validate(doc["input"], "descriptor.schema.json")
        validate(doc["result"], "verdict.schema.json")
        return doc["result"]["status"]

    def test_g2_table(self):
        quad = ["1", "0", "-2", "0", "1"]  # (T-1)^2 (T+1)^2
        self.assertEqual(self.verdict({"g": 2, "charpoly": quad, "k": 1, "r": 1}), "NotRegularizable")
        self.assertEqual(self.verdict({"g": 2, "charpoly": quad, "k": 1, "r": 0}), "Regularizable")
        self.assertEqual(self.verdict({"g": 2, "charpoly": quad, "k": 1, "r": 2}), "Undetermined")

    def test_r0(self):
        self.assertEqual(self.verdict({"g": 2, "charpoly": [1, -3, 1, -3, 1], "r": 0}), "Regularizable")

    def test_contract(self):
        self.assertEqual(run(["decide"], {"g": 1, "charpoly": [1, -3, 1], "r": 1, "k": 1}).returncode, 3)


class Split(unittest.TestCase):
    def test_block(self):
        payload = {"matrix": [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 2, 1], [0, 0, 1, 1]]}
        doc = ok(["split"], payload)
        validate(doc["input"], "split.schema.json", "/$defs/request")
        validate(doc["result"], "split.schema.json")
        self.assertEqual(doc["result"]["L0"]["rank"] + doc["result"]["L1"]["rank"], 4)
        self.assertEqual(doc["result"]["L1"]["charpoly"], ["1", "-3", "1"])


class Fan(unittest.TestCase):
    def test_tate_roundtrip(self):
        for n in range(1, 7):
            doc = ok(["fan", "build"], {"monodromy": [[1, n], [0, 1]]})
            validate(doc["input"], "fan.schema.json", "/$defs/build_request")
            res = doc["result"]
            validate(res["fan"], "fan.schema.json")
            validate(res["report"], "fan.schema.json", "/$defs/report")
            self.assertTrue(res["report"]["ok"])
            self.assertEqual(res["central_fiber"], {"components": n, "maximal_cones": n})
            again = ok(["fan", "validate"], res["fan"])
            self.assertTrue(again["result"]["ok"])
            ext = ok(["fan", "extends"], {"fan": res["fan"], "n_phi": [2]})
            self.assertTrue(ext["result"]["extends"])

    def test_seed_recorded(self):
        doc = ok(["--seed", "7", "fan", "build", "--random-metric"], {"B": [[2, 1], [1, 2]]})
        self.assertEqual(doc["options"]["seed"], 7)
        self.assertEqual(doc["result"]["fan"]["seed"], 7)
        self.assertTrue(doc["result"]["report"]["ok"])

    def test_bad_monodromy(self):
        self.assertEqual(run(["fan", "build"], {"monodromy": [[2, 1], [1, 1]]}).returncode, 3)


class Orbit(unittest.TestCase):
    SQUARE = {"g": 1, "basis": [[[1, 0]], [[0, 1]]], "polarization": [[0, -1], [1, 0]]}

    def dims(self, alpha):
        doc = ok(["--tol", "1e-10", "orbit", "analyze", "--split"], {"lattice": self.SQUARE, "alpha": alpha})
        validate(doc["input"], "orbit.schema.json", "/$defs/analyze_request")
        validate(doc["result"], "orbit.schema.json", "/$defs/report")
        r = doc["result"]
        return r["h"], r["s"], r["r"]

    def test_examples(self):
        self.assertEqual(self.dims([[2 ** 0.5, 0]]), (1, 0, 1))
        self.assertEqual(self.dims([[2 ** 0.5, 3 ** 0.5]]), (2, 1, 0))
        self.assertEqual(self.dims([[0.5, 0.25]]), (0, 0, 0))

    def test_ill_conditioned(self):
        lat = {"g": 1, "basis": [[[1, 0]], [[1, 1e-15]]]}
        self.assertEqual(run(["orbit", "analyze"], {"lattice": lat, "alpha": [0.5]}).returncode, 4)

    def test_approx(self):
        payload = {"alpha": [0.41421356237, 0.333333333333], "denominators": [3, 10, 100], "B": [[3, 0]]}
        doc = ok(["orbit", "approx"], payload)
        validate(doc["input"], "orbit.schema.json", "/$defs/approx_request")
        self.assertEqual([a["extends"] for a in doc["result"]], [True, False, False])


class Catalog(unittest.TestCase):
    def test_list(self):
        expected = {2: [1, 2], 3: [1, 3], 4: [1, 2, 4, 2, 4, 6, 2, 3], 5: [1, 4, 3, 5, 5]}
        for g, ms in expected.items():
            doc = ok(["catalog", "list", "--g", str(g)])
            for c in doc["result"]:
                validate(c, "catalog.schema.json", "/$defs/case")
            self.assertEqual([c["m"] for c in doc["result"]], ms)

    def test_build_and_decide(self):
        doc = ok(["catalog", "build", "--case", "2.2", "--d", "2"])
        validate(doc["result"], "catalog.schema.json", "/$defs/family")
        verdict = ok(["decide"], doc["result"]["descriptor"])
        self.assertEqual(verdict["result"]["status"], "NotRegularizable")

    def test_pell(self):
        doc = ok(["catalog", "pell", "--d", "13"])
        self.assertEqual(doc["result"], {"x": "18", "y": "5", "norm": -1})

    def test_end_to_end(self):
        doc = ok(["end-to-end", "--case", "2.2", "--d", "2", "--r", "1", "--with-fan"])
        validate(doc["result"], "catalog.schema.json", "/$defs/bundle")
        self.assertEqual(doc["result"]["verdict"]["status"], "NotRegularizable")
        self.assertTrue(doc["result"]["fan"]["report"]["ok"])
        fo = ok(["end-to-end", "--case", "2.1", "--finite-order"])
        self.assertEqual(fo["result"]["verdict"]["status"], "Regularizable")
        five = ok(["end-to-end", "--case", "5.5"])
        self.assertEqual(five["result"]["family"]["case"]["m"], 5)

    def test_metadata_only_case(self):
        self.assertEqual(run(["end-to-end", "--case", "4.7"]).returncode, 3)
        self.assertEqual(run(["catalog", "build", "--case", "9.9"]).returncode, 3)


class Reproducibility(unittest.TestCase):
    def test_bit_for_bit(self):
        args = ["--seed", "3", "end-to-end", "--case", "3.2", "--r", "2", "--with-fan"]
        self.assertEqual(run(args).stdout, run(args).stdout)


if __name__ == "__main__":
    unittest.main()
