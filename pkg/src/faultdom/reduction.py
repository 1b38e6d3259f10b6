"""Polynomial reduction from 3-SAT to the ERR:LD decision problem.

Each variable ``x_i`` becomes an 11-vertex, 15-edge gadget containing the
literal vertices ``x_i`` and ``~x_i`` plus ``y_i`` and ``z_i``; each clause
becomes an 8-vertex gadget with 9 internal edges whose vertex ``c_j`` is joined
to its three literal vertices.  Totals: ``11N + 8M`` vertices and
``15N + 12M`` edges.

Every non-literal vertex lies in the closed neighbourhood of a degree-2 vertex,
so any ERR:LD set contains all ``9N + 8M`` of them.  With only those, ``y_i``
and ``z_i`` differ solely in literal neighbours and ``c_j`` is 2-dominated, so
a set of size ``10N + 8M`` exists exactly when the formula is satisfiable.

The gadget topologies live in ``data/gadgets.json``; they were found by the
constrained search in ``tools/derive_gadgets.py``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from . import kernels
from .graph import Graph, GraphError, build_graph
from .solver import SearchConfig, exact_min
from .verify import DetectorSet, Variant, verify


class CnfError(ValueError):
    pass


Literal = tuple[int, bool]  # (variable index from 1, negated)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[Literal, Literal, Literal], ...]

    def __post_init__(self):
        for j, clause in enumerate(self.clauses):
            if len(clause) != 3:
                raise CnfError(f"clause {j + 1} has {len(clause)} literals, expected 3")
            vars_ = [v for v, _ in clause]
            if len(set(vars_)) != 3:
                raise CnfError(f"clause {j + 1} repeats a variable: {vars_}")
            for v in vars_:
                if not 1 <= v <= self.num_vars:
                    raise CnfError(f"clause {j + 1} uses variable {v} outside 1..{self.num_vars}")

    @classmethod
    def from_ints(cls, num_vars: int, clauses) -> "CnfFormula":
        return cls(num_vars, tuple(tuple((abs(l), l < 0) for l in c) for c in clauses))

    @property
    def M(self) -> int:
        return len(self.clauses)

    @property
    def N(self) -> int:
        return self.num_vars

    def evaluate(self, assignment) -> bool:
        return all(any(assignment[v - 1] != neg for v, neg in c) for c in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {self.M}"]
        for c in self.clauses:
            lines.append(" ".join(str(-v if neg else v) for v, neg in c) + " 0")
        return "\n".join(lines) + "\n"


def parse_cnf(text: str) -> CnfFormula:
    header = None
    tokens: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise CnfError(f"malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise CnfError(f"malformed header {line!r}") from None
            continue
        if header is None:
            raise CnfError("clause before 'p cnf' header")
        try:
            tokens.extend(int(t) for t in line.split())
        except ValueError as exc:
            raise CnfError(f"bad literal: {exc}") from None
    if header is None:
        raise CnfError("missing 'p cnf N M' header")
    clauses, current = [], []
    for t in tokens:
        if t == 0:
            clauses.append(current)
            current = []
        else:
            current.append(t)
    if current:
        raise CnfError("last clause is not terminated by 0")
    n, m = header
    if len(clauses) != m:
        raise CnfError(f"header declares {m} clauses, found {len(clauses)}")
    for j, c in enumerate(clauses):
        if len(c) != 3:
            raise CnfError(f"clause {j + 1} has {len(c)} literals, expected 3")
        if len({abs(l) for l in c}) != 3:
            raise CnfError(f"clause {j + 1} repeats a variable: {c}")
    return CnfFormula.from_ints(n, clauses)


def satisfying_assignments(psi: CnfFormula):
    for bits in itertools.product((False, True), repeat=psi.num_vars):
        if psi.evaluate(bits):
            yield bits


def is_satisfiable(psi: CnfFormula) -> bool:
    return next(satisfying_assignments(psi), None) is not None


# --- gadgets ----------------------------------------------------------------


@dataclass(frozen=True)
class Gadget:
    labels: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    free: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class GadgetSpec:
    version: int
    variable: Gadget
    clause: Gadget
    clause_vertex: int

    @classmethod
    def from_json(cls, data: dict) -> "GadgetSpec":
        def gadget(d):
            labels = tuple(d["labels"])
            pos = {lab: i for i, lab in enumerate(labels)}
            edges = tuple((pos[a], pos[b]) for a, b in d["edges"])
            free = tuple(pos[lab] for lab in d.get("free", []))
            return Gadget(labels, edges, free)

        F = gadget(data["variable"])
        H = gadget(data["clause"])
        return cls(int(data["version"]), F, H, H.labels.index(data["clause"]["clause_vertex"]))

    def to_json(self) -> dict:
        def gadget(g, extra=None):
            d = {"labels": list(g.labels),
                 "edges": [[g.labels[a], g.labels[b]] for a, b in g.edges],
                 "free": [g.labels[i] for i in g.free]}
            d.update(extra or {})
            return d

        return {"version": self.version,
                "variable": gadget(self.variable),
                "clause": gadget(self.clause, {"clause_vertex": self.clause.labels[self.clause_vertex]})}


@lru_cache(maxsize=1)
def shipped_gadgets() -> GadgetSpec:
    text = resources.files("faultdom").joinpath("data", "gadgets.json").read_text()
    return GadgetSpec.from_json(json.loads(text))


@dataclass(frozen=True)
class ReductionGraph:
    formula: CnfFormula
    graph: Graph
    mandatory: DetectorSet
    free: tuple[tuple[int, int], ...]  # (x_i, ~x_i) vertex per variable

    def literal_vertex(self, var: int, negated: bool) -> int:
        pos, neg = self.free[var - 1]
        return neg if negated else pos

    @property
    def threshold(self) -> int:
        return 10 * self.formula.N + 8 * self.formula.M


def build_reduction(psi: CnfFormula, gadgets: GadgetSpec | None = None) -> ReductionGraph:
    if psi.M == 0 or psi.N == 0:
        raise CnfError("the reduction needs at least one clause")
    gadgets = gadgets or shipped_gadgets()
    F, H = gadgets.variable, gadgets.clause
    x_pos, x_neg = F.labels.index("x"), F.labels.index("xbar")
    labels: list[str] = []
    edges: list[tuple[int, int]] = []
    free = []
    mandatory = 0
    for i in range(1, psi.N + 1):
        base = len(labels)
        labels += [f"{lab}_{i}" for lab in F.labels]
        edges += [(base + a, base + b) for a, b in F.edges]
        free.append((base + x_pos, base + x_neg))
        for k in range(F.size):
            if k not in F.free:
                mandatory |= 1 << (base + k)
    for j, clause in enumerate(psi.clauses, start=1):
        base = len(labels)
        labels += [f"{lab}_{j}" for lab in H.labels]
        edges += [(base + a, base + b) for a, b in H.edges]
        for k in range(H.size):
            mandatory |= 1 << (base + k)
        c = base + gadgets.clause_vertex
        for var, neg in clause:
            edges.append((c, free[var - 1][1 if neg else 0]))
    G = build_graph(len(labels), edges, labels)
    return ReductionGraph(psi, G, DetectorSet(G.n, mandatory), tuple(free))


def assignment_to_set(R: ReductionGraph, assignment) -> DetectorSet:
    """Mandatory detectors plus ``x_i`` for true and ``~x_i`` for false variables."""
    values = list(assignment)
    if len(values) != R.formula.N:
        raise CnfError(f"assignment covers {len(values)} of {R.formula.N} variables")
    mask = R.mandatory.mask
    for (pos, neg), value in zip(R.free, values):
        mask |= 1 << (pos if value else neg)
    return DetectorSet(R.graph.n, mask)


def forced_by_domination(G: Graph, req: int = 3) -> DetectorSet:
    """Union of closed neighbourhoods of size exactly ``req``: in every valid set."""
    mask = 0
    for c in G.closed_masks:
        if c.bit_count() == req:
            mask |= c
    return DetectorSet(G.n, mask)


def gadget_failures(R: ReductionGraph, S: DetectorSet):
    """Violations of ``S`` grouped by what they name.

    Groups: ``yz`` (a ``y_i``/``z_i`` pair), ``clause`` (a ``c_j`` vertex),
    ``literal`` (an ``x_i`` or ``~x_i`` vertex) and ``other``.  With only the
    mandatory detectors, a sound gadget pair produces no ``other`` violations.
    """
    G = R.graph
    out = {"yz": [], "clause": [], "literal": [], "other": []}
    for v in verify(G, S, Variant.ERR_LD, cap=None).violations:
        names = [G.label(w).rsplit("_", 1)[0] for w in v.witnesses]
        if sorted(names) == ["y", "z"] and len({G.label(w).rsplit("_", 1)[1] for w in v.witnesses}) == 1:
            out["yz"].append(v)
        elif "c" in names:
            out["clause"].append(v)
        elif "x" in names or "xbar" in names:
            out["literal"].append(v)
        else:
            out["other"].append(v)
    return out


def literal_choices_sound(R: ReductionGraph) -> bool:
    """Mandatory plus any non-empty literal choice per variable is valid iff every clause
    contains a chosen literal.  Exhaustive over ``3^N`` choices."""
    G = R.graph
    code = int(Variant.ERR_LD)
    options = ((True, False), (False, True), (True, True))
    for choice in itertools.product(options, repeat=R.formula.N):
        mask = R.mandatory.mask
        for (pos, neg), (take_pos, take_neg) in zip(R.free, choice):
            if take_pos:
                mask |= 1 << pos
            if take_neg:
                mask |= 1 << neg
        expected = all(any(choice[v - 1][1 if neg else 0] for v, neg in c) for c in R.formula.clauses)
        if (kernels.find_violation(G, mask, code) is None) != expected:
            return False
    return True


@dataclass(frozen=True)
class RoundTrip:
    ok: bool | None
    satisfiable: bool
    optimum: int | None
    threshold: int
    proved: bool

    def __bool__(self) -> bool:
        return bool(self.ok)


def roundtrip_check(psi: CnfFormula, config: SearchConfig | None = None) -> RoundTrip:
    """Brute-force satisfiability against the exact ERR:LD optimum of the reduction.

    ``ok`` is ``None`` when the search budget ran out before optimality was proved.
    """
    sat = is_satisfiable(psi)
    R = build_reduction(psi)
    forced = forced_by_domination(R.graph)
    if forced.mask & R.mandatory.mask != R.mandatory.mask:
        raise GraphError("gadget mandatory vertices are not forced by domination")
    result = exact_min(R.graph, Variant.ERR_LD, config, force=R.mandatory)
    if not result.proved_optimal:
        return RoundTrip(None, sat, result.optimum, R.threshold, False)
    if sat:
        ok = result.optimum == R.threshold
    else:
        ok = result.optimum > R.threshold
    return RoundTrip(ok, sat, result.optimum, R.threshold, True)


def format_outputs(R: ReductionGraph) -> tuple[str, str, str]:
    """Edge list, label sidecar and mandatory detector set, as file texts."""
    from .graph import format_edge_list, format_labels

    return format_edge_list(R.graph), format_labels(R.graph), R.mandatory.to_text()
