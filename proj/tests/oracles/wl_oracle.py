#!/usr/bin/env python3
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
"""Independent brute-force reference used to freeze golden values in tests.

Uses nested loops and literal Python multisets (sorted tuples). Shares no
code with the C++ library.
"""
import itertools
import math
import sys
from fractions import Fraction


def cycle(n):
    return {(i, (i + 1) % n) for i in range(n)} | {((i + 1) % n, i) for i in range(n)}


def union_c3c3():
    e = set()
    for base in (0, 3):
        for a in range(3):
            for b in range(3):
                if a != b:
                    e.add((base + a, base + b))
    return e


def shrikhande():
    conn = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)]
    e = set()
    for a in range(4):
        for b in range(4):
            for da, db in conn:
                e.add((4 * a + b, 4 * ((a + da) % 4) + (b + db) % 4))
    return e


def rook():
    e = set()
    for u in range(16):
        for v in range(16):
            if u != v and ((u // 4 == v // 4) != (u % 4 == v % 4)):
                e.add((u, v))
    return e


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    e = set()
    for a, b in outer + inner + spokes:
        e.add((a, b))
        e.add((b, a))
    return e


def initial(n, edges):
    return {(i, j): ("loop" if i == j else ("edge" if (i, j) in edges else "non"))
            for i in range(n) for j in range(n)}


def step(n, lab, ell):
    out = {}
    for i in range(n):
        for j in range(n):
            ms = []
            for mid in itertools.product(range(n), repeat=ell - 1):
                walk = (i,) + mid + (j,)
                ms.append(tuple(lab[(walk[x], walk[x + 1])] for x in range(ell)))
            out[(i, j)] = tuple(sorted(ms, key=repr))
    return out


def partition(n, lab):
    blocks = {}
    for i in range(n):
        for j in range(n):
            blocks.setdefault(lab[(i, j)], []).append((i, j))
    return frozenset(frozenset(b) for b in blocks.values())


def run(n, edges, ell):
    lab = initial(n, edges)
    parts = [partition(n, lab)]
    labs = [lab]
    while True:
        lab = step(n, lab, ell)
        labs.append(lab)
        parts.append(partition(n, lab))
        if parts[-1] == parts[-2]:
            return labs, parts, len(parts) - 2


def multiset(lab):
    return sorted(map(repr, lab.values()))


def first_distinguishing(n, e1, e2, ell):
    l1 = initial(n, e1)
    l2 = initial(n, e2)
    for t in range(0, 50):
        # shared hash: labels are nested literal values, comparable across graphs
        if multiset(l1) != multiset(l2):
            return t
        p1, p2 = partition(n, l1), partition(n, l2)
        n1, n2 = step(n, l1, ell), step(n, l2, ell)
        if partition(n, n1) == p1 and partition(n, n2) == p2 and multiset(n1) == multiset(n2):
            return None
        l1, l2 = n1, n2


def main():
    print("C6 vs C3+C3 wl2 distinguishing round:", first_distinguishing(6, cycle(6), union_c3c3(), 2))
    for name, n, e in [("C6", 6, cycle(6)), ("C3+C3", 6, union_c3c3()), ("petersen", 10, petersen())]:
        for ell in (2, 3):
            _, parts, t = run(n, e, ell)
            print(name, "ell", ell, "stable_round", t, "class_counts", [len(p) for p in parts])
    for name, e in [("shrikhande", shrikhande()), ("rook4x4", rook())]:
        _, parts, t = run(16, e, 2)
        print(name, "wl2 stable_round", t, "class_counts", [len(p) for p in parts])
    if "--srg" in sys.argv:
        print("shrikhande vs rook wl2:", first_distinguishing(16, shrikhande(), rook(), 2))
        print("shrikhande vs rook w3:", first_distinguishing(16, shrikhande(), rook(), 3))
    # Path on 3 vertices with labels a,b,a
    nu = "aba"
    pe = {(0, 1), (1, 0), (1, 2), (2, 1)}
    keys = {(i, j): (nu[i], nu[j], "loop" if i == j else ("edge" if (i, j) in pe else "non"))
            for i in range(3) for j in range(3)}
    nonloop = {v for (i, j), v in keys.items() if i != j}
    loop = {v for (i, j), v in keys.items() if i == j}
    print("path aba: non-loop classes", len(nonloop), "loop classes", len(loop))
    # Power sums
    print("u({1,2}) =", [1 + 1, 1 + 2, 1 + 4])
    print("C(142,132) =", math.comb(142, 132), "C(12,2) =", math.comb(12, 2))
    # countable h for n=2, ell=2
    tau = lambda a: 2 ** a[0] * 3 ** a[1]
    h = lambda a: (2 ** 1 + 1) ** tau(a)
    print("h(1,0) =", h((1, 0)), "phi({(0,0),(0,0)}) =", 2 * h((0, 0)))


if __name__ == "__main__":
    main()
