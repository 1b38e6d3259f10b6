"""Periodic detector patterns on infinite lattices.

A pattern is a ``pr x pc`` cell of detector offsets repeated by translation.
Certification tiles the cell over a torus whose sides are the smallest
multiples of the period that are at least 5 (6 columns for the ladder), then
runs the ERR:LD check there.

Why a torus of side >= 5 is enough: every condition concerns a single vertex's
closed neighbourhood or a pair at distance <= 2, so it only reads offsets in a
window of five consecutive rows and columns around the pair.  At side 5 those
offsets stay distinct modulo the torus, so each torus condition is literally
the infinite-lattice condition for a lift of the pair; pairs further apart are
automatic once domination holds.  Densities are exact ``Fraction`` values.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .graph import Graph, GraphError, LatticeKind, bfs_distances, build_graph, make_torus, to_dot
from .verify import DetectorSet, Variant, Verdict, verify

LOCALITY = 2


class PatternError(GraphError):
    pass


@dataclass(frozen=True)
class PeriodicPattern:
    lattice: LatticeKind
    period: tuple[int, int]
    offsets: frozenset[tuple[int, int]]

    def __post_init__(self):
        pr, pc = self.period
        if pr <= 0 or pc <= 0:
            raise PatternError(f"period must be positive, got {self.period}")
        if self.lattice is LatticeKind.LADDER and pr != 2:
            raise PatternError("ladder patterns span both rows: period rows must be 2")
        if self.lattice is LatticeKind.HEX and (pr % 2 or pc % 2):
            raise PatternError("HEX periods must be even in both directions")
        for r, c in self.offsets:
            if not (0 <= r < pr and 0 <= c < pc):
                raise PatternError(f"offset {(r, c)} outside the {pr}x{pc} cell")

    @classmethod
    def make(cls, lattice, period, offsets) -> "PeriodicPattern":
        if isinstance(lattice, str):
            lattice = LatticeKind.parse(lattice)
        return cls(lattice, (int(period[0]), int(period[1])), frozenset((int(r), int(c)) for r, c in offsets))

    @property
    def density(self) -> Fraction:
        return pattern_density(self)

    def shifted(self, dr: int, dc: int) -> "PeriodicPattern":
        pr, pc = self.period
        return PeriodicPattern(self.lattice, self.period,
                               frozenset(((r + dr) % pr, (c + dc) % pc) for r, c in self.offsets))

    def to_text(self) -> str:
        pr, pc = self.period
        lines = [f"{self.lattice.value} {pr} {pc}"]
        lines += [f"{r} {c}" for r, c in sorted(self.offsets)]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Certification:
    ok: bool
    window_dims: tuple[int, int]
    violations: tuple
    density: Fraction

    def report(self) -> str:
        r, c = self.window_dims
        d = self.density
        head = f"{'OK' if self.ok else 'FAIL'} density {d.numerator}/{d.denominator} torus {r}x{c}\n"
        return head + "".join(v.line() + "\n" for v in self.violations)


def parse_pattern(text: str) -> PeriodicPattern:
    lines = [s for s in (x.split("#", 1)[0].strip() for x in text.splitlines()) if s]
    if not lines:
        raise PatternError("empty pattern file")
    head = lines[0].split()
    if len(head) != 3:
        raise PatternError(f"pattern header must be 'lattice pr pc', got {lines[0]!r}")
    try:
        pr, pc = int(head[1]), int(head[2])
        offsets = [tuple(int(t) for t in line.split()) for line in lines[1:]]
    except ValueError as exc:
        raise PatternError(f"bad pattern token: {exc}") from None
    if any(len(o) != 2 for o in offsets):
        raise PatternError("offset lines must be 'r c'")
    return PeriodicPattern.make(head[0], (pr, pc), offsets)


def pattern_density(P: PeriodicPattern) -> Fraction:
    if not P.offsets:
        raise PatternError("empty pattern cannot dominate anything")
    pr, pc = P.period
    return Fraction(len(P.offsets), pr * pc)


def domination_lower_bound(lattice: LatticeKind) -> Fraction:
    """Every closed neighbourhood holds >= 3 detectors, so density >= 3/(degree+1)."""
    return Fraction(3, lattice.degree + 1)


def torus_dims(lattice: LatticeKind, period: tuple[int, int]) -> tuple[int, int]:
    pr, pc = period
    floor = max(5, 2 * LOCALITY + 1)

    def up(p, lo, even=False):
        k = p * math.ceil(lo / p)
        while even and k % 2:
            k += p
        return k

    if lattice is LatticeKind.LADDER:
        return 2, up(pc, max(floor, 6))
    even = lattice is LatticeKind.HEX
    return up(pr, floor, even), up(pc, floor, even)


@lru_cache(maxsize=64)
def _torus(lattice: LatticeKind, rows: int, cols: int) -> Graph:
    return make_torus(lattice, rows, cols)


def tile_mask(P: PeriodicPattern, rows: int, cols: int) -> int:
    pr, pc = P.period
    mask = 0
    for r in range(rows):
        for c in range(cols):
            if (r % pr, c % pc) in P.offsets:
                mask |= 1 << (r * cols + c)
    return mask


def instantiate(P: PeriodicPattern, dims: tuple[int, int] | None = None) -> tuple[Graph, DetectorSet]:
    rows, cols = dims or torus_dims(P.lattice, P.period)
    G = _torus(P.lattice, rows, cols)
    return G, DetectorSet(G.n, tile_mask(P, rows, cols))


def certify_pattern(P: PeriodicPattern, variant: Variant = Variant.ERR_LD) -> Certification:
    density = pattern_density(P)
    dims = torus_dims(P.lattice, P.period)
    G, S = instantiate(P, dims)
    verdict: Verdict = verify(G, S, variant)
    return Certification(verdict.ok, dims, verdict.violations, density)


def snapshot_dot(P: PeriodicPattern, margin: int = 1) -> str:
    """DOT drawing of one fundamental cell plus ``margin`` cells of context on each side.

    The window is cut from a torus large enough that no edge wraps inside it;
    detectors are shaded.
    """
    pr, pc = P.period
    rows, cols = pr * (1 + 2 * margin), pc * (1 + 2 * margin)
    if P.lattice is LatticeKind.LADDER:
        rows = 2
    # one spare period in each direction keeps wrap-around edges out of the window
    floor_r, floor_c = torus_dims(P.lattice, P.period)
    big_r = 2 if P.lattice is LatticeKind.LADDER else max(floor_r, rows + pr)
    big_c = max(floor_c, cols + pc)
    T = _torus(P.lattice, big_r, big_c)
    mask = tile_mask(P, big_r, big_c)
    keep = [r * big_c + c for r in range(rows) for c in range(cols)]
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in T.edges() if u in index and v in index]
    W = build_graph(len(keep), edges, [T.label(v) for v in keep])
    S = [index[v] for v in keep if mask >> v & 1]
    return to_dot(W, S, name=f"{P.lattice.value}_{pr}x{pc}")


# --- exhaustive cell search ---------------------------------------------------


def _cell_shapes(lattice: LatticeKind, max_cell: tuple[int, int]):
    max_r, max_c = max_cell
    rows = [2] if lattice is LatticeKind.LADDER else range(1, max_r + 1)
    for pr in rows:
        for pc in range(1, max_c + 1):
            if lattice is LatticeKind.HEX and (pr % 2 or pc % 2):
                continue
            yield pr, pc


def _translations(lattice: LatticeKind, pr: int, pc: int):
    for a in range(pr if lattice is not LatticeKind.LADDER else 1):
        for b in range(pc):
            if lattice is LatticeKind.HEX and (a + b) % 2:
                continue
            yield a, b


def search_min_pattern(lattice: LatticeKind | str, max_cell: tuple[int, int],
                       variant: Variant = Variant.ERR_LD) -> PeriodicPattern | None:
    """Lowest-density certified pattern over all cells up to ``max_cell``.

    Candidates are tried by (density, cell area, rows, cols); within a cell,
    subsets are enumerated in lexicographic order and only the representative
    of each translation class is certified.
    """
    if isinstance(lattice, str):
        lattice = LatticeKind.parse(lattice)
    if max_cell[0] * max_cell[1] > 36:
        raise PatternError("cell search is limited to cells of at most 36 vertices")
    lb = domination_lower_bound(lattice) if variant is Variant.ERR_LD else Fraction(0)
    levels = []
    for pr, pc in _cell_shapes(lattice, max_cell):
        area = pr * pc
        for k in range(max(1, math.ceil(lb * area)), area + 1):
            levels.append((Fraction(k, area), area, pr, pc, k))
    levels.sort()
    code = int(variant)
    for _, area, pr, pc, k in levels:
        rows, cols = torus_dims(lattice, (pr, pc))
        G = _torus(lattice, rows, cols)
        # torus bits covered by each cell position
        cell_bits = [0] * area
        for r in range(rows):
            for c in range(cols):
                cell_bits[(r % pr) * pc + c % pc] |= 1 << (r * cols + c)
        shifts = [[((r + a) % pr) * pc + (c + b) % pc for r in range(pr) for c in range(pc)]
                  for a, b in _translations(lattice, pr, pc)]
        for combo in itertools.combinations(range(area), k):
            key = sum(1 << i for i in combo)
            if any(sum(1 << sh[i] for i in combo) < key for sh in shifts):
                continue
            mask = 0
            for i in combo:
                mask |= cell_bits[i]
            if kernels.find_violation(G, mask, code) is None:
                offsets = [(i // pc, i % pc) for i in combo]
                return PeriodicPattern.make(lattice, (pr, pc), offsets)
    return None


LADDER_PATTERN = PeriodicPattern.make(
    LatticeKind.LADDER, (2, 3), [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2)]
)
"""Every ``x_i`` plus ``y_i`` for ``i`` not divisible by 3 (row 0 = x, row 1 = y).

Keeping only ``y_i`` with ``i`` divisible by 3 gives density 2/3 and leaves
``y_1`` 2-dominated; five detectors per 2x3 cell is the 5/6 construction.
"""


def load_shipped_pattern(name: str) -> PeriodicPattern:
    from importlib import resources

    text = resources.files("faultdom").joinpath("data", "patterns", f"{name}.pat").read_text()
    return parse_pattern(text)


SHIPPED = ("sq", "hex", "tri", "king", "ladder")


# --- 3-regular tree -----------------------------------------------------------


def build_tree3_errld(radius: int) -> tuple[Graph, DetectorSet, list[int]]:
    """Ball of the 3-regular tree with the BFS detector construction.

    The root is not a detector and its neighbours are.  Then every visited
    vertex with unvisited neighbours gets detectors among them (lowest index
    first) until it is exactly 3-dominated.  Returns the graph, the detector set
    and the list of interior vertices (depth <= radius - 2) on which every
    ERR:LD condition holds.
    """
    from .graph import tree3_ball

    if radius < 3:
        raise GraphError("tree construction needs radius >= 3 for an interior margin")
    G = tree3_ball(radius)
    depth = bfs_distances(G, 0)
    s = 0
    visited = 1
    for u in G.adjacency[0]:
        s |= 1 << u
        visited |= 1 << u
    queue = list(G.adjacency[0])
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        fresh = [u for u in G.adjacency[v] if not visited >> u & 1]
        if not fresh:
            continue
        have = (G.closed_masks[v] & s).bit_count()
        for u in fresh:
            if have >= 3:
                break
            s |= 1 << u
            have += 1
        for u in fresh:
            visited |= 1 << u
            queue.append(u)
    interior = [v for v in range(G.n) if depth[v] <= radius - 2]
    return G, DetectorSet(G.n, s), interior


def interior_violations(G: Graph, S: DetectorSet, interior: list[int]):
    inner = set(interior)
    return [v for v in verify(G, S, Variant.ERR_LD, cap=None).violations
            if all(w in inner for w in v.witnesses)]


# --- the worked SQ example ----------------------------------------------------


def worked_example_window(P: PeriodicPattern | None = None, rows: int = 6, cols: int = 6):
    """Label a torus tiled by the 2/3 SQ pattern with ``v_<col letter><row number>``.

    Searches shifts (and the transpose) of the pattern for the alignment in
    which ``c2..c5`` are detectors in one column, ``d3, d4`` and ``b3, b4`` are
    not, and ``e3, e4, d2, d5`` are.  Returns ``(graph, detector set)`` or
    ``None`` if no alignment matches.
    """
    P = P or load_shipped_pattern("sq")
    candidates = [P, PeriodicPattern(P.lattice, (P.period[1], P.period[0]),
                                     frozenset((c, r) for r, c in P.offsets))]
    must_in = ["c2", "c3", "c4", "c5", "d2", "d5", "e3", "e4", "b2", "c1", "a4", "b5"]
    must_out = ["b3", "b4", "d3", "d4"]
    for base in candidates:
        pr, pc = base.period
        R = pr * math.ceil(rows / pr)
        C = pc * math.ceil(cols / pc)
        for a in range(pr):
            for b in range(pc):
                Q = base.shifted(a, b)
                G = make_torus(LatticeKind.SQ, R, C)
                labels = [f"v_{chr(ord('a') + c)}{r + 1}" for r in range(R) for c in range(C)]
                G = build_graph(G.n, G.edges(), labels)
                S = DetectorSet(G.n, tile_mask(Q, R, C))
                idx = G.index_of
                if all(idx(f"v_{x}") in S for x in must_in) and all(idx(f"v_{x}") not in S for x in must_out):
                    return G, S
    return None
