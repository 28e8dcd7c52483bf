# Copyright 2026 The walkref Authors
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

"""Runs the CLI and validates every JSON output against the shipped schemas."""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource


def main() -> int:
    cli, schema_dir, data = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    registry = Registry().with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())

    def validate(doc, name):
        jsonschema.Draft202012Validator(schemas[name], registry=registry).validate(doc)

    def run(*args, expect=0):
        proc = subprocess.run([cli, *args], capture_output=True, text=True)
        if proc.returncode != expect:
            raise SystemExit(f"walkref {' '.join(args)} exited {proc.returncode}: {proc.stderr}")
        return proc.stdout

    checked = 0
    for path in sorted(data.glob("*.json")):
        validate(json.loads(path.read_text()), "graph.schema.json")
        checked += 1
    for args in (["--proc", "wl2", str(data / "c6.g6")],
                 ["--proc", "walk", "--ell", "3", "--trace", "--matrix", str(data / "path_aba.json")],
                 ["--trace", "named:petersen"]):
        validate(json.loads(run("refine", "--format", "json", *args)), "refine.schema.json")
        checked += 1
    for line in run("refine", "--format", "text", "--trace", "--matrix", str(data / "c6.g6")).splitlines():
        if line.startswith("{"):
            validate(json.loads(line), "trace_record.schema.json")
            checked += 1
    for args in ([str(data / "c6.g6"), str(data / "c3c3.g6")],
                 [str(data / "c6.g6"), str(data / "petersen.g6")],
                 ["--proc", "walk", "--ell", "3", str(data / "shrikhande.g6"), str(data / "rook4x4.g6")]):
        validate(json.loads(run("compare", *args)), "compare.schema.json")
        checked += 1
    for args in (["--ell", "2", "named:C6"], ["--ell", "3", "random:5:3"], ["--ell", "2", str(data / "labelled_directed.json")]):
        validate(json.loads(run("mpnn-sim", "--format", "json", *args)), "mpnn_sim.schema.json")
        checked += 1
    for args in ([str(data / "c6.g6")], [str(data / "path_aba.json")], ["named:K1"]):
        validate(json.loads(run("gnn-sim", "--format", "json", *args)), "gnn_sim.schema.json")
        checked += 1
    doc = json.loads(run("verify", "--format", "json", "--corpus-size", "10",
                         "--only", "dimension-formula,expressivity-witnesses,round-counts"))
    validate(doc, "verify.schema.json")
    failing = json.loads(run("verify", "--format", "json", "--mutant-walk-offset", "1",
                             "--only", "oracle-equivalence", expect=3))
    validate(failing, "verify.schema.json")
    assert failing["suites"][0]["counterexample"]["graph_json"]["n"] >= 1
    validate(failing["suites"][0]["counterexample"]["graph_json"], "graph.schema.json")
    checked += 2
    print(f"{checked} documents valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
