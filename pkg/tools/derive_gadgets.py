"""Search for reduction gadgets and freeze the first valid pair to data/gadgets.json.

Clause gadget (fixed): c - d - e, a 6-cycle e f g h i j with chord f-i.
The degree-2 vertices d, g, h, j force all eight vertices by domination, and
``c`` has only ``c`` and ``d`` inside the gadget, so it needs a literal.

Variable gadget skeleton: ``y ~ x``, ``z ~ xbar``, and ``y``, ``z`` share
the neighbours ``w`` (degree 2, forcing ``y, z, w``) and ``a``.  So ``y`` and
``z`` are separated only by ``{x, xbar} & S``.  The remaining 9 edges are
enumerated over ``{x, xbar, a, p, q, r, s, t}``.  A candidate is accepted when:

* every non-literal vertex is forced (it lies in a closed neighbourhood of size 3)
  and neither literal is;
* with the mandatory vertices alone, every violation names a ``y/z`` pair, a
  clause vertex or a literal vertex.  (Literal-free failures are impossible
  with 15 edges: mandatory vertices need 9 mandatory-mandatory edges and each
  clause-free literal needs 3 mandatory neighbours, leaving a 2-regular
  mandatory subgraph in which ``y, z`` sit on a triangle or a 4-cycle, and both
  leave a non-``y/z`` pair unresolved.)
* additionally, every non-empty literal choice per variable (including both
  literals) is valid exactly when each clause contains a chosen literal.

Run: python3 tools/derive_gadgets.py
"""

from __future__ import annotations

import itertools
import json
import sys
from pathlib import Path

from faultdom.reduction import (CnfFormula, Gadget, GadgetSpec, build_reduction,
                                forced_by_domination, gadget_failures, literal_choices_sound)

CLAUSE = Gadget(
    labels=("c", "d", "e", "f", "g", "h", "i", "j"),
    edges=((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 2), (3, 6)),
    free=(),
)

F_LABELS = ("x", "xbar", "y", "z", "w", "a", "p", "q", "r", "s", "t")
X, XB, Y, Z, W, A = range(6)
SKELETON = ((Y, X), (Z, XB), (Y, W), (Z, W), (Y, A), (Z, A))
OPEN = (X, XB, A, 6, 7, 8, 9, 10)

TEST_FORMULAS = [
    CnfFormula.from_ints(3, [(1, 2, 3)]),
    CnfFormula.from_ints(3, [(-1, -2, -3)]),
    CnfFormula.from_ints(4, [(1, -2, 3)]),
    CnfFormula.from_ints(3, [(1, 2, 3), (-1, 2, 3), (1, -2, 3), (1, 2, -3)]),
    CnfFormula.from_ints(3, [tuple(s * v for s, v in zip(signs, (1, 2, 3)))
                             for signs in itertools.product((1, -1), repeat=3)]),
    CnfFormula.from_ints(5, [(1, 2, -4), (-1, 2, 3), (2, -3, 5), (2, -4, -5)]),
]


def degree_ok(edges) -> bool:
    deg = [0] * 11
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    # literals: besides y/z they need two more neighbours to be 3-dominated when absent
    if deg[X] < 3 or deg[XB] < 3 or deg[A] < 3:
        return False
    return all(deg[v] >= 2 for v in range(6, 11))


def mandatory_ok(edges) -> bool:
    adj = [0] * 11
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    forced = 0
    for v in range(2, 11):  # literal degrees grow with clause edges, so they never force
        if adj[v].bit_count() == 2:
            forced |= adj[v] | (1 << v)
    return forced == ((1 << 11) - 1) & ~0b11


def functional_ok(spec: GadgetSpec) -> bool:
    for psi in TEST_FORMULAS:
        R = build_reduction(psi, spec)
        G = R.graph
        forced = forced_by_domination(G).mask
        if forced & R.mandatory.mask != R.mandatory.mask:
            return False
        if any(forced >> v & 1 for pair in R.free for v in pair):
            return False
        if not literal_choices_sound(R):
            return False
        if gadget_failures(R, R.mandatory)["other"]:
            return False
    return True


def search():
    pairs = list(itertools.combinations(OPEN, 2))
    checked = 0
    for extra in itertools.combinations(pairs, 9):
        edges = SKELETON + extra
        if not degree_ok(edges) or not mandatory_ok(edges):
            continue
        checked += 1
        F = Gadget(F_LABELS, edges, (X, XB))
        spec = GadgetSpec(1, F, CLAUSE, 0)
        if functional_ok(spec):
            print(f"found after {checked} structurally admissible candidates", file=sys.stderr)
            return spec
    return None


def main() -> int:
    spec = search()
    if spec is None:
        print("no gadget found", file=sys.stderr)
        return 1
    out = Path(__file__).resolve().parents[1] / "src" / "faultdom" / "data" / "gadgets.json"
    out.write_text(json.dumps(spec.to_json(), indent=1) + "\n")
    print(f"wrote {out}")
    print(json.dumps(spec.to_json()["variable"]["edges"]))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
