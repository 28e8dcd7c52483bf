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

"""Cross-checks CLI refinement traces and verdicts against wl_oracle.py."""

import json
import pathlib
import subprocess
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parent))
import wl_oracle  # noqa: E402

GRAPHS = {
    "C6": (6, wl_oracle.cycle(6)),
    "C3+C3": (6, wl_oracle.union_c3c3()),
    "petersen": (10, wl_oracle.petersen()),
    "shrikhande": (16, wl_oracle.shrikhande()),
    "rook4x4": (16, wl_oracle.rook()),
}


def cli(binary, *args):
    out = subprocess.run([binary, *args], capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main() -> int:
    binary = sys.argv[1]
    failures = 0
    for name, (n, edges) in GRAPHS.items():
        for ell in (2, 3):
            _, parts, stable = wl_oracle.run(n, edges, ell)
            counts = [len(p) for p in parts]
            proc = ["--proc", "wl2"] if ell == 2 else ["--proc", "walk", "--ell", str(ell)]
            doc = cli(binary, "refine", "--format", "json", *proc, f"named:{name}")
            got = [r["class_count"] for r in doc["rounds"]]
            ok = doc["stable_round"] == stable and got == counts
            failures += not ok
            print(f"{'ok  ' if ok else 'FAIL'} {name} ell={ell}: oracle {stable} {counts}, cli {doc['stable_round']} {got}")
    for a, b, ell in (("C6", "C3+C3", 2), ("shrikhande", "rook4x4", 2), ("shrikhande", "rook4x4", 3)):
        (n, ea), (_, eb) = GRAPHS[a], GRAPHS[b]
        expected = wl_oracle.first_distinguishing(n, ea, eb, ell)
        proc = ["--proc", "wl2"] if ell == 2 else ["--proc", "walk", "--ell", str(ell)]
        doc = cli(binary, "compare", *proc, f"named:{a}", f"named:{b}")
        got = doc.get("round") if doc["verdict"] == "distinguished" else None
        ok = got == expected
        failures += not ok
        print(f"{'ok  ' if ok else 'FAIL'} {a} vs {b} ell={ell}: oracle {expected}, cli {got}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
